use std::process::ExitCode;

use clap::{Args, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};
use sigcalc::arith::modular::{pow_mod, primes_up_to, primitive_root};
use sigcalc::charsig::lift_unit;
use sigcalc::ecurve::{ec_group_order, ell_torsion_count, h1_local_dim, RationalCurve};
use sigcalc::exec::stream_rng;
use sigcalc::indexcalc::{rational_character_pairing, Site};
use sigcalc::quadfield::ray_class_ell_rank;
use sigcalc::{Error, Exec};

use crate::report::{num, EXIT_INVARIANT, EXIT_PRECONDITION};
use crate::Common;

/// Counterexamples kept per suite.
const DUMP_LIMIT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Reciprocity,
    Rayrank,
    Lemma1,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    /// Prime for the reciprocity and ray-class suites.
    #[arg(long, default_value_t = 31)]
    pub p: u64,
    /// Prime dividing p - 1.
    #[arg(long, default_value_t = 5)]
    pub ell: u64,
    #[command(flatten)]
    pub common: Common,
}

enum Trial {
    Pass,
    Skip,
    Fail(Value),
}

struct Tally {
    suite: &'static str,
    trials: Vec<Trial>,
}

impl Tally {
    fn line(&self) -> (String, bool) {
        let count = |f: fn(&Trial) -> bool| self.trials.iter().filter(|t| f(t)).count();
        let passed = count(|t| matches!(t, Trial::Pass));
        let skipped = count(|t| matches!(t, Trial::Skip));
        let failures: Vec<Value> = self
            .trials
            .iter()
            .filter_map(|t| match t {
                Trial::Fail(v) => Some(v.clone()),
                _ => None,
            })
            .take(DUMP_LIMIT)
            .collect();
        let failed = count(|t| matches!(t, Trial::Fail(_)));
        let line = json!({
            "suite": self.suite,
            "trials": num(self.trials.len()),
            "passed": num(passed),
            "skipped": num(skipped),
            "failed": num(failed),
            "counterexamples": failures,
        });
        (serde_json::to_string(&line).expect("tally serializes"), failed == 0)
    }
}

pub fn run(args: &VerifyArgs) -> ExitCode {
    let (p, ell) = (args.p, args.ell);
    if !sigcalc::arith::modular::is_prime(p) || !sigcalc::arith::modular::is_prime(ell) || (p - 1) % ell != 0 {
        eprintln!("error: need primes with ell | p - 1, got p = {p}, ell = {ell}");
        return ExitCode::from(EXIT_PRECONDITION);
    }
    let exec = args.common.exec();
    let seed = args.common.seed;
    let mut tallies = Vec::new();
    if matches!(args.suite, Suite::Reciprocity | Suite::All) {
        tallies.push(reciprocity(p, ell, args.trials, seed, exec));
    }
    if matches!(args.suite, Suite::Rayrank | Suite::All) {
        tallies.push(rayrank(p, ell, args.trials, seed, exec));
    }
    if matches!(args.suite, Suite::Lemma1 | Suite::All) {
        tallies.push(local_dims(exec));
    }
    let mut all_ok = true;
    for t in &tallies {
        let (line, ok) = t.line();
        println!("{line}");
        all_ok &= ok;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}

/// Local pairings of random positive S-units sum to zero.
fn reciprocity(p: u64, ell: u64, trials: u64, seed: u64, exec: Exec) -> Tally {
    let g = primitive_root(p);
    let support: Vec<u64> = primes_up_to(50).into_iter().filter(|&q| q != p).collect();
    let results = exec.map_range(0, trials, |i| {
        let mut rng = stream_rng(seed, i);
        let k = rng.gen_range(1..=4usize);
        let mut a: Vec<(u64, i64)> = (0..k)
            .map(|_| (support[rng.gen_range(0..support.len())], rng.gen_range(1..=3i64) * if rng.gen() { 1 } else { -1 }))
            .collect();
        a.sort_unstable();
        let mut sites = vec![Site::P];
        sites.extend(a.iter().map(|&(q, _)| Site::Prime(q)));
        sites.dedup();
        let sum = sites
            .iter()
            .map(|&s| rational_character_pairing(p, ell, g, s, &a))
            .try_fold(0u64, |acc, x| x.map(|x| (acc + x) % ell));
        match sum {
            Ok(0) => Trial::Pass,
            Ok(s) => Trial::Fail(json!({"trial": num(i), "a": a.iter().map(|(q, e)| [num(q), num(e)]).collect::<Vec<_>>(), "sum": num(s)})),
            Err(e) => Trial::Fail(json!({"trial": num(i), "error": e.to_string()})),
        }
    });
    Tally { suite: "reciprocity", trials: results }
}

/// Ray-class ranks over lifted fields: 1 for P_u²P_v and n(S) - 1 for S ⊇ {u, u′}.
fn rayrank(p: u64, ell: u64, trials: u64, seed: u64, exec: Exec) -> Tally {
    let g = primitive_root(p);
    let e = (p - 1) / ell;
    let results = exec.map_range(0, trials, |i| {
        let mut rng = stream_rng(seed, i);
        let a = loop {
            let a = rng.gen_range(2..p - 1);
            if pow_mod(a, e, p) != 1 {
                break a;
            }
        };
        let inst = match lift_unit(a, p, ell, g, seed.wrapping_add(i)) {
            Ok(inst) => inst,
            Err(Error::BudgetExhausted { .. } | Error::TooLarge { .. }) => return Trial::Skip,
            Err(err) => return Trial::Fail(json!({"trial": num(i), "a": num(a), "error": err.to_string()})),
        };
        let (u, u2, v, v2) = (inst.u, inst.u_prime, inst.v, inst.v_prime);
        let cases = [
            ("P_u^2 P_v", vec![(u, 2), (v, 1)], 1usize),
            ("S = {u, u'}", vec![(u, 2), (u2, 2)], 1),
            ("S = {u, u', v}", vec![(u, 2), (u2, 2), (v, 1)], 2),
            ("S = {u, u', v, v'}", vec![(u, 2), (u2, 2), (v, 1), (v2, 1)], 3),
        ];
        for (name, modulus, want) in cases {
            match ray_class_ell_rank(&inst.field, ell, &modulus) {
                Ok(got) if got == want => {}
                Ok(got) => {
                    return Trial::Fail(json!({"trial": num(i), "D": num(inst.field.radicand()), "modulus": name,
                                              "expected": num(want), "got": num(got)}))
                }
                Err(err) => return Trial::Fail(json!({"trial": num(i), "modulus": name, "error": err.to_string()})),
            }
        }
        Trial::Pass
    });
    Tally { suite: "rayrank", trials: results }
}

/// h1_local_dim against log_ℓ of the ℓ-torsion count at every good q ≤ 500.
fn local_dims(exec: Exec) -> Tally {
    let cases: Vec<(i64, i64, u64)> = vec![(0, 3, 13), (-1, 1, 3), (-1, 1, 5), (-1, 1, 7)];
    let primes = primes_up_to(500);
    let mut trials = Vec::new();
    for (a, b, ell) in cases {
        let curve = RationalCurve::new(a, b).expect("nonsingular fixture");
        let results = exec.map_range(0, primes.len() as u64, |i| {
            let q = primes[i as usize];
            let Ok(red) = curve.reduce(q) else { return Trial::Skip };
            let tors = ell_torsion_count(&red, ell);
            let mut brute = 0u32;
            let mut t = tors;
            while t > 1 {
                t /= ell;
                brute += 1;
            }
            if q == ell {
                brute += 1;
            }
            match h1_local_dim(&curve, q, ell) {
                Ok(d) if d == brute => Trial::Pass,
                Err(Error::OutOfScope(_)) if ec_group_order(&red, Exec::Sequential).is_multiple_of(ell) => Trial::Skip,
                other => Trial::Fail(json!({"curve": [num(a), num(b)], "ell": num(ell), "q": num(q),
                                            "brute": num(brute), "got": format!("{other:?}")})),
            }
        });
        trials.extend(results);
    }
    Tally { suite: "lemma1", trials }
}
