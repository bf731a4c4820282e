//! ℓ-rank of ray class groups with small moduli, computed as the cokernel
//! of the global units in (O_K/𝔪)^* ⊗ F_ℓ.

use std::collections::BTreeSet;

use super::place::{embed, residue, Place, Splitting};
use super::{QuadInt, RealQuadField};
use crate::arith::dlog::{bsgs_dlog, MulGroup};
use crate::arith::linalg::rank_mod_ell;
use crate::arith::modular::{is_prime, pow_mod, primitive_root};
use crate::arith::padic::teichmuller;
use crate::error::{Error, Result};

/// One F_ℓ coordinate of (O_K/𝔪)^* ⊗ F_ℓ.
#[derive(Debug, Clone, Copy)]
pub(crate) enum LocalCoordinate {
    /// Discrete log of the residue, reduced mod ℓ, at a place over q ≡ 1 (mod ℓ).
    Residue { place: Place, generator: u64 },
    /// Teichmüller y-coordinate at a split place over ℓ.
    OneUnit { place: Place },
}

impl LocalCoordinate {
    pub(crate) fn eval(&self, k: &RealQuadField, x: &QuadInt, ell: u64) -> Result<u64> {
        match *self {
            LocalCoordinate::Residue { place, generator } => {
                let q = place.prime;
                let r = residue(k, x, &place)?;
                if r == 0 {
                    return Err(Error::NotAUnit { x: x.to_string(), modulus: q });
                }
                let e = (q - 1) / ell;
                let g0 = pow_mod(generator, e, q);
                bsgs_dlog(&MulGroup { p: q }, &g0, &pow_mod(r, e, q), ell)
            }
            LocalCoordinate::OneUnit { place } => {
                let z = embed(k, x, &place, 2)?;
                Ok(teichmuller(z.value(), ell)?.y)
            }
        }
    }
}

/// F_ℓ coordinates contributed by each place of the modulus.
pub(crate) fn local_coordinates(ell: u64, modulus: &[(Place, u32)]) -> Result<Vec<LocalCoordinate>> {
    let distinct: BTreeSet<Place> = modulus.iter().map(|(w, _)| *w).collect();
    if distinct.len() != modulus.len() {
        return Err(Error::BadModulus("repeated place".into()));
    }
    let mut coords = Vec::new();
    for &(place, e) in modulus {
        let q = place.prime;
        match place.splitting {
            Splitting::Inert => return Err(Error::BadModulus(format!("inert place {place}"))),
            Splitting::Ramified if q == ell => {
                return Err(Error::BadModulus(format!("ramified place over ℓ = {ell}")))
            }
            _ => {}
        }
        if e == 0 {
            continue;
        }
        if q == ell {
            if e >= 2 {
                coords.push(LocalCoordinate::OneUnit { place });
            }
        } else if q % ell == 1 {
            coords.push(LocalCoordinate::Residue { place, generator: primitive_root(q) });
        }
    }
    Ok(coords)
}

/// dim_{F_ℓ} of the ray class group modulo `modulus`, tensored with F_ℓ.
pub fn ray_class_ell_rank(k: &RealQuadField, ell: u64, modulus: &[(Place, u32)]) -> Result<usize> {
    if ell < 3 || !is_prime(ell) {
        return Err(Error::BadInput(format!("ℓ = {ell} must be an odd prime")));
    }
    let h = k.class_number()?;
    if h % ell == 0 {
        return Err(Error::ClassNumberDivisible { class_number: h, ell });
    }
    let coords = local_coordinates(ell, modulus)?;
    if coords.is_empty() {
        return Ok(0);
    }
    let (unit, _) = k.fundamental_unit()?;
    let rows: Vec<Vec<u64>> = [QuadInt::rational(-1), unit]
        .iter()
        .map(|u| coords.iter().map(|c| c.eval(k, u, ell)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(coords.len() - rank_mod_ell(&rows, ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::split_places;

    #[test]
    fn small_moduli() {
        let k = RealQuadField::new(4226).unwrap();
        assert_eq!(ray_class_ell_rank(&k, 5, &[]), Ok(0));
        let k79 = RealQuadField::new(79).unwrap();
        assert!(matches!(ray_class_ell_rank(&k79, 3, &[]), Err(Error::ClassNumberDivisible { .. })));
    }

    #[test]
    fn minus_one_has_trivial_image() {
        let k = RealQuadField::new(2).unwrap();
        for q in [7u64, 17, 23, 31, 41, 47] {
            for w in split_places(q, &k) {
                let coords = local_coordinates(3, &[(w, 1)]).unwrap();
                for c in coords {
                    assert_eq!(c.eval(&k, &QuadInt::rational(-1), 3).unwrap(), 0);
                }
            }
        }
    }
}
