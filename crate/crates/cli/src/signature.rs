use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use sigcalc::charsig::{
    bsgs_oracle, lift_unit, signature_from_dl, signature_index_calculus, CharSignatureInstance, InstanceDoc,
    SignatureSearch,
};

use crate::report::{num, Failure, Outcome, RunReport, EXIT_CONDITION, EXIT_PRECONDITION};
use crate::Common;

/// Largest p for which the oracle side of a cross-check runs.
const BSGS_CHECK_LIMIT: u64 = 1 << 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    DlOracle,
    Index,
    Both,
}

#[derive(Args, Debug)]
pub struct SignatureArgs {
    /// Instance JSON file.
    #[arg(long, conflicts_with = "lift", required_unless_present = "lift")]
    pub instance: Option<PathBuf>,
    /// Lift a target: "p,ell,g,a".
    #[arg(long)]
    pub lift: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Factor base bound for the index method.
    #[arg(long = "bound", visible_alias = "B", default_value_t = 300)]
    pub bound: u64,
    #[command(flatten)]
    pub common: Common,
}

fn parse_lift(text: &str) -> Result<[u64; 4], Failure> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::new(EXIT_PRECONDITION, format!("--lift expects \"p,ell,g,a\", got {text:?}")))?;
    parts
        .try_into()
        .map_err(|_| Failure::new(EXIT_PRECONDITION, format!("--lift expects four integers, got {text:?}")))
}

fn load_instance(args: &SignatureArgs, report: &mut RunReport) -> Result<CharSignatureInstance, Failure> {
    if let Some(path) = &args.instance {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PRECONDITION, format!("reading {}: {e}", path.display())))?;
        let doc: InstanceDoc = serde_json::from_str(&text)
            .map_err(|e| Failure::new(EXIT_PRECONDITION, format!("parsing {}: {e}", path.display())))?;
        report.input("instance", path.display().to_string());
        return Ok(CharSignatureInstance::from_doc(&doc)?);
    }
    let [p, ell, g, a] = parse_lift(args.lift.as_deref().expect("clap requires --lift"))?;
    report.input("lift", json!({"p": num(p), "ell": num(ell), "g": num(g), "a": num(a)}));
    Ok(lift_unit(a, p, ell, g, args.common.seed)?)
}

fn conditions_json(inst: &CharSignatureInstance) -> Value {
    let c = &inst.conditions;
    json!({
        "class_number": c.class_number.map(num).unwrap_or(Value::Null),
        "class_number_coprime": c.class_number_coprime,
        "unit_nontrivial_at_u": c.unit_nontrivial_at_u,
        "unit_nontrivial_at_u_prime": c.unit_nontrivial_at_u_prime,
        "residue_not_ell_power": c.residue_not_ell_power,
    })
}

pub fn run(args: &SignatureArgs) -> Outcome {
    let mut report = RunReport::new("signature", args.common.seed);
    report.input("method", format!("{:?}", args.method).to_lowercase());
    let inst = load_instance(args, &mut report).map_err(|f| f.with_report(report.clone()))?;
    let doc = serde_json::to_value(inst.to_doc()).expect("doc serializes");
    report.output("instance", doc).output("conditions", conditions_json(&inst));
    if !inst.conditions.all_hold() {
        let msg = format!("conditions failed: {}", inst.conditions.failures().join("; "));
        return Err(Failure::new(EXIT_CONDITION, msg).with_report(report));
    }
    let y = inst.y()?;
    report.output("y", num(y));

    let want_oracle = args.method != Method::Index
        || (!args.common.no_verify && inst.p <= BSGS_CHECK_LIMIT);
    let oracle = if want_oracle {
        let sig = signature_from_dl(&inst, bsgs_oracle(inst.p)).map_err(|e| Failure::from(e).with_report(report.clone()))?;
        report.output("s_dl_oracle", num(sig.s));
        if let Some(m) = sig.m {
            report.output("m", num(m));
        }
        Some(sig.s)
    } else {
        None
    };
    let index = if args.method != Method::DlOracle {
        let search = SignatureSearch::new(args.bound, args.common.seed);
        report.input("bound", num(args.bound));
        report.attempt("attempts_per_relation", search.attempts_per_relation);
        let sig = signature_index_calculus(&inst, search, args.common.exec())
            .map_err(|e| Failure::from(e).with_report(report.clone()))?;
        report.output("s_index", num(sig.s));
        Some(sig.s)
    } else {
        None
    };
    let s = index.or(oracle).expect("at least one method ran");
    report.output("s", num(s));
    match (oracle, index) {
        (Some(a), Some(b)) => {
            report.output("agree", a == b);
            report.check(a == b);
        }
        _ if args.method == Method::Index => report.cross_check = Some("skipped".into()),
        _ => {}
    }
    Ok(report)
}
