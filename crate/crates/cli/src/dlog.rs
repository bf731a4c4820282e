use clap::{Args, ValueEnum};
use sigcalc::arith::modular::{is_generator, is_prime, primitive_root};
use sigcalc::arith::{bsgs_dlog, MulGroup};
use sigcalc::indexcalc::{index_calculus_dlog, IndexCalculusParams};

use crate::report::{num, Failure, Outcome, RunReport, EXIT_PRECONDITION};
use crate::Common;

/// Largest p for which the index-calculus answer is cross-checked by BSGS.
const BSGS_CHECK_LIMIT: u64 = 1 << 42;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Bsgs,
    Index,
}

#[derive(Args, Debug)]
pub struct DlogArgs {
    #[arg(long)]
    pub p: u64,
    /// Prime dividing p - 1; required for the index method.
    #[arg(long)]
    pub ell: Option<u64>,
    /// Generator of F_p^*; defaults to the least primitive root.
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long)]
    pub a: u64,
    #[arg(long, value_enum, default_value_t = Method::Bsgs)]
    pub method: Method,
    /// Factor base bound.
    #[arg(long = "bound", visible_alias = "B", default_value_t = 1000)]
    pub bound: u64,
    #[command(flatten)]
    pub common: Common,
}

pub fn run(args: &DlogArgs) -> Outcome {
    let p = args.p;
    if !is_prime(p) || p < 3 {
        return Err(Failure::new(EXIT_PRECONDITION, format!("p = {p} is not an odd prime")));
    }
    let g = args.g.unwrap_or_else(|| primitive_root(p));
    if !is_generator(g, p) {
        return Err(Failure::new(EXIT_PRECONDITION, format!("{g} does not generate F_{p}^*")));
    }
    let a = args.a % p;
    if a == 0 {
        return Err(Failure::new(EXIT_PRECONDITION, "a must be nonzero mod p"));
    }
    let mut report = RunReport::new("dlog", args.common.seed);
    report.input("p", num(p)).input("g", num(g)).input("a", num(a));
    if let Some(ell) = args.ell {
        report.input("ell", num(ell));
    }
    let bsgs = || bsgs_dlog(&MulGroup { p }, &g, &a, p - 1);
    match args.method {
        Method::Bsgs => {
            report.input("method", "bsgs");
            let m = bsgs().map_err(|e| Failure::from(e).with_report(report.clone()))?;
            report.output("m", num(m));
            if let Some(ell) = args.ell {
                report.output("m_mod_ell", num(m % ell));
            }
        }
        Method::Index => {
            let ell = args.ell.ok_or_else(|| Failure::new(EXIT_PRECONDITION, "--ell is required for --method index"))?;
            // a factor base reaching p adds only unusable columns
            let bound = args.bound.min(p - 1);
            report.input("method", "index").input("bound", num(bound));
            let params = IndexCalculusParams { p, ell, g, bound, seed: args.common.seed };
            let m = index_calculus_dlog(&params, a, args.common.exec())
                .map_err(|e| Failure::from(e).with_report(report.clone()))?;
            report.output("m", num(m));
            if args.common.no_verify || p > BSGS_CHECK_LIMIT {
                report.cross_check = Some("skipped".into());
            } else {
                let full = bsgs()?;
                report.output("m_bsgs_mod_ell", num(full % ell));
                report.check(full % ell == m);
            }
        }
    }
    Ok(report)
}
