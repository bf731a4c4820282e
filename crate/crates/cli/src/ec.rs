use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use sigcalc::arith::modular::mul_mod;
use sigcalc::ecsig::{
    bsgs_ecdl, coker_dim, ecdl_from_signature, lift_ec_instance, scan_torsion_places, signature_from_ecdl,
    EcInstanceDoc, EcSignatureInstance,
};
use sigcalc::ecurve::FpPoint;

use crate::fixture::CurveFixture;
use crate::report::{num, Failure, Outcome, RunReport, EXIT_PRECONDITION};
use crate::Common;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EcCommand {
    /// lift → signature from ECDL → ECDL from signature, compared with BSGS.
    Roundtrip,
    /// Cokernel dimensions for S = {u,u′}, {u,u′,v}, {u,u′,v,v′}.
    Coker,
    /// Good degree-one places of norm ≤ B where ℓ divides the reduced order.
    Scan,
}

#[derive(Args, Debug)]
pub struct EcArgs {
    #[arg(value_enum)]
    pub subcommand: EcCommand,
    /// Named fixture (f7l13) or a TOML file with p, a, b, ell, Q, R.
    #[arg(long, conflicts_with = "instance", required_unless_present = "instance")]
    pub fixture: Option<String>,
    /// Lifted instance JSON file.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Norm bound for the scan.
    #[arg(long = "bound", visible_alias = "B", default_value_t = 100)]
    pub bound: u64,
    #[command(flatten)]
    pub common: Common,
}

fn point_json(pt: &FpPoint) -> Value {
    match pt {
        FpPoint::Infinity => Value::String("O".into()),
        FpPoint::Affine { x, y } => json!([num(x), num(y)]),
    }
}

/// The lifted instance, or `None` when R̃ = O and m = 0 is immediate.
fn instance(args: &EcArgs, report: &mut RunReport) -> Result<Option<EcSignatureInstance>, Failure> {
    if let Some(path) = &args.instance {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PRECONDITION, format!("reading {}: {e}", path.display())))?;
        let doc: EcInstanceDoc = serde_json::from_str(&text)
            .map_err(|e| Failure::new(EXIT_PRECONDITION, format!("parsing {}: {e}", path.display())))?;
        report.input("instance", path.display().to_string());
        return Ok(Some(EcSignatureInstance::from_doc(&doc)?));
    }
    let fx = CurveFixture::load(args.fixture.as_deref().expect("clap requires --fixture"))?;
    let base = fx.curve()?;
    let (q, r) = fx.points();
    report.input(
        "fixture",
        json!({"name": fx.name, "p": num(fx.p), "a": num(fx.a), "b": num(fx.b), "ell": num(fx.ell),
               "Q": point_json(&q), "R": point_json(&r)}),
    );
    if r == FpPoint::Infinity {
        return Ok(None);
    }
    Ok(Some(lift_ec_instance(&base, &q, &r, fx.ell, args.common.seed, args.common.exec())?))
}

pub fn run(args: &EcArgs) -> Outcome {
    let mut report = RunReport::new(&format!("ec {:?}", args.subcommand).to_lowercase(), args.common.seed);
    let inst = instance(args, &mut report).map_err(|f| f.with_report(report.clone()))?;
    let Some(inst) = inst else {
        report.output("m", num(0)).output("note", "R is the identity");
        return Ok(report);
    };
    report.output("instance", serde_json::to_value(inst.to_doc()).expect("doc serializes"));
    let fail = |report: &RunReport| {
        let report = report.clone();
        move |e: sigcalc::Error| Failure::from(e).with_report(report)
    };
    match args.subcommand {
        EcCommand::Roundtrip => roundtrip(args, &inst, &mut report).map_err(fail(&report))?,
        EcCommand::Coker => {
            let sets = [
                ("u,u'", vec![]),
                ("u,u',v", vec![inst.v]),
                ("u,u',v,v'", vec![inst.v, inst.v_prime]),
            ];
            let mut rows = Vec::new();
            let mut dims = Vec::new();
            for (name, extra) in &sets {
                let d = coker_dim(&inst, extra).map_err(fail(&report))?;
                dims.push(d);
                rows.push(json!({"S": name, "dim": num(d)}));
            }
            report.output("dims", Value::Array(rows));
            if !args.common.no_verify {
                report.check(dims == [0, 1, 2]);
            }
        }
        EcCommand::Scan => {
            let ell = inst.ell;
            let floor = ((ell as f64).sqrt() - 1.0).powi(2);
            let found = scan_torsion_places(&inst.curve, &inst.field, ell, args.bound);
            report.input("bound", num(args.bound));
            report.output("hasse_floor", format!("{floor:.3}"));
            report.output(
                "places",
                Value::Array(
                    found
                        .iter()
                        .map(|(w, n)| json!({"place": w.to_string(), "norm": num(w.prime), "order": num(n)}))
                        .collect(),
                ),
            );
            if !args.common.no_verify {
                report.check(found.iter().all(|(w, n)| w.prime as f64 >= floor && n % ell == 0));
            }
        }
    }
    Ok(report)
}

fn roundtrip(args: &EcArgs, inst: &EcSignatureInstance, report: &mut RunReport) -> sigcalc::Result<()> {
    let ell = inst.ell;
    let oracle = |c: &_, q: &_, r: &_| bsgs_ecdl(c, q, r, ell);
    let sig = signature_from_ecdl(inst, oracle)?;
    let n = inst.n();
    let m = ecdl_from_signature(inst, |_| Ok((sig.alpha, sig.beta)))?;
    report
        .output("alpha", num(sig.alpha))
        .output("beta", num(sig.beta))
        .output("n", num(n))
        .output("m", num(m));
    if !args.common.no_verify {
        let m_bsgs = bsgs_ecdl(&inst.base, &inst.q_tilde, &inst.r_tilde, ell)?;
        let relation = (m_bsgs + mul_mod(n, sig.alpha, ell) + sig.beta).is_multiple_of(ell);
        report.output("m_bsgs", num(m_bsgs)).output("relation_holds", relation);
        report.check(m == m_bsgs && relation);
    }
    Ok(())
}
