use serde::{Deserialize, Serialize};

use crate::arith::modular::{is_generator, is_prime, pow_mod};
use crate::arith::padic::teichmuller;
use crate::error::{Error, Result};
use crate::quadfield::{embed, residue, split_places, Place, QuadInt, RealQuadField, Splitting};

/// Outcome of the three solvability conditions. Condition (2) is reported
/// separately at each place over ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `None` when the field is beyond the class-number bound.
    pub class_number: Option<u64>,
    pub class_number_coprime: bool,
    pub unit_nontrivial_at_u: bool,
    pub unit_nontrivial_at_u_prime: bool,
    pub residue_not_ell_power: bool,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.class_number_coprime
            && self.unit_nontrivial_at_u
            && self.unit_nontrivial_at_u_prime
            && self.residue_not_ell_power
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.class_number_coprime {
            out.push("class number divisible by ell");
        }
        if !self.unit_nontrivial_at_u {
            out.push("unit is an ell-th power mod P_u^2");
        }
        if !self.unit_nontrivial_at_u_prime {
            out.push("unit is an ell-th power mod P_u'^2");
        }
        if !self.residue_not_ell_power {
            out.push("unit residue at v is an ell-th power");
        }
        out
    }
}

/// A discrete-log target lifted to a unit α of a real quadratic field in
/// which p and ℓ split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSignatureInstance {
    pub field: RealQuadField,
    pub p: u64,
    pub ell: u64,
    pub g: u64,
    /// Residue of α at v.
    pub a: u64,
    pub alpha: QuadInt,
    pub u: Place,
    pub u_prime: Place,
    pub v: Place,
    pub v_prime: Place,
    pub seed: u64,
    pub conditions: ConditionReport,
}

/// Teichmüller y-coordinate of `x` at the place `w` over ℓ.
pub(crate) fn y_at(k: &RealQuadField, x: &QuadInt, w: &Place, ell: u64) -> Result<u64> {
    Ok(teichmuller(embed(k, x, w, 2)?.value(), ell)?.y)
}

pub fn check_conditions(inst: &CharSignatureInstance) -> ConditionReport {
    let k = &inst.field;
    let class_number = k.class_number().ok();
    let nonzero_y = |w: &Place| matches!(y_at(k, &inst.alpha, w, inst.ell), Ok(y) if y != 0);
    let residue_ok = match residue(k, &inst.alpha, &inst.v) {
        Ok(r) if r != 0 => pow_mod(r, (inst.p - 1) / inst.ell, inst.p) != 1,
        _ => false,
    };
    ConditionReport {
        class_number,
        class_number_coprime: class_number.is_some_and(|h| h % inst.ell != 0),
        unit_nontrivial_at_u: nonzero_y(&inst.u),
        unit_nontrivial_at_u_prime: nonzero_y(&inst.u_prime),
        residue_not_ell_power: residue_ok,
    }
}

impl CharSignatureInstance {
    /// Assembles an instance and evaluates its conditions. `u_label` and
    /// `v_label` are root labels of split places over ℓ and p.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: RealQuadField,
        p: u64,
        ell: u64,
        g: u64,
        alpha: QuadInt,
        u_label: u64,
        v_label: u64,
        seed: u64,
    ) -> Result<Self> {
        if !is_prime(p) || !is_prime(ell) || ell < 3 || !(p - 1).is_multiple_of(ell) {
            return Err(Error::BadInput(format!("need odd primes with ℓ | p-1, got p={p}, ℓ={ell}")));
        }
        if !is_generator(g, p) {
            return Err(Error::BadInput(format!("{g} does not generate F_{p}^*")));
        }
        if !field.is_unit(&alpha) {
            return Err(Error::BadInput(format!("{alpha} is not a unit")));
        }
        let find = |q: u64, label: u64| -> Result<(Place, Place)> {
            let places = split_places(q, &field);
            if places[0].splitting != Splitting::Split {
                return Err(Error::BadInput(format!("{q} does not split in {field}")));
            }
            let w = places
                .iter()
                .find(|w| w.root_label == Some(label))
                .copied()
                .ok_or_else(|| Error::BadInput(format!("no place over {q} with root {label}")))?;
            Ok((w, w.conjugate()))
        };
        let (u, u_prime) = find(ell, u_label)?;
        let (v, v_prime) = find(p, v_label)?;
        let a = residue(&field, &alpha, &v)?;
        let mut inst = CharSignatureInstance {
            field,
            p,
            ell,
            g,
            a,
            alpha,
            u,
            u_prime,
            v,
            v_prime,
            seed,
            conditions: ConditionReport {
                class_number: None,
                class_number_coprime: false,
                unit_nontrivial_at_u: false,
                unit_nontrivial_at_u_prime: false,
                residue_not_ell_power: false,
            },
        };
        inst.conditions = check_conditions(&inst);
        Ok(inst)
    }

    /// Same instance with α replaced by `alpha`.
    pub fn with_alpha(&self, alpha: QuadInt) -> Result<Self> {
        Self::new(
            self.field.clone(),
            self.p,
            self.ell,
            self.g,
            alpha,
            self.u.root_label.expect("split"),
            self.v.root_label.expect("split"),
            self.seed,
        )
    }

    /// Teichmüller y-coordinate of α at u.
    pub fn y(&self) -> Result<u64> {
        y_at(&self.field, &self.alpha, &self.u, self.ell)
    }

    pub fn ell_power_exponent(&self) -> u64 {
        (self.p - 1) / self.ell
    }

    /// `g^((p-1)/ℓ)`, the base of the order-ℓ quotient.
    pub fn reduced_generator(&self) -> u64 {
        pow_mod(self.g, self.ell_power_exponent(), self.p)
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            p: self.p.to_string(),
            ell: self.ell.to_string(),
            g: self.g.to_string(),
            a: self.a.to_string(),
            d: self.field.radicand().to_string(),
            alpha: [self.alpha.a.to_string(), self.alpha.b.to_string()],
            v_root_label: self.v.root_label.expect("split").to_string(),
            u_root_label: self.u.root_label.expect("split").to_string(),
            seed: self.seed.to_string(),
        }
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self> {
        fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
            s.parse().map_err(|_| Error::BadInput(format!("{what}: cannot parse {s:?}")))
        }
        let field = RealQuadField::new(num(&doc.d, "D")?)?;
        let alpha = QuadInt::new(
            num::<num_bigint::BigInt>(&doc.alpha[0], "alpha")?,
            num::<num_bigint::BigInt>(&doc.alpha[1], "alpha")?,
        );
        let inst = Self::new(
            field,
            num(&doc.p, "p")?,
            num(&doc.ell, "ell")?,
            num(&doc.g, "g")?,
            alpha,
            num(&doc.u_root_label, "u_root_label")?,
            num(&doc.v_root_label, "v_root_label")?,
            num(&doc.seed, "seed")?,
        )?;
        let a: u64 = num(&doc.a, "a")?;
        if a % inst.p != inst.a {
            return Err(Error::BadInput(format!("alpha reduces to {} at v, not {a}", inst.a)));
        }
        Ok(inst)
    }

    /// `a^((p-1)/ℓ)` compared against `(g^((p-1)/ℓ))^m`.
    pub(crate) fn check_log(&self, target: u64, m: u64) -> bool {
        pow_mod(target, self.ell_power_exponent(), self.p) == pow_mod(self.reduced_generator(), m, self.p)
    }
}

/// Serialized instance. Integers are decimal strings so values beyond
/// 2^53 survive JSON tooling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub p: String,
    pub ell: String,
    pub g: String,
    pub a: String,
    #[serde(rename = "D")]
    pub d: String,
    pub alpha: [String; 2],
    pub v_root_label: String,
    pub u_root_label: String,
    pub seed: String,
}
