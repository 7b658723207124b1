//! J- and W-representations of simple functions over a finite support.
//!
//! With support `s`, a J-representation writes `g = Σ_{r ⊆ s} y_r 1_{Ĵ(r)}`
//! and a W-representation writes `g = Σ_{r ⊆ s} z_r 1_{Ŵ(r, s∖r)}`. The two
//! are related by the zeta/Möbius transform over subsets of `s`. Coefficient
//! vectors are indexed by the local order of [`GenSet::subsets`].

use num::Zero;

use crate::algebra::GenSystem;
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::rat::Rat;
use crate::stone::SimpleFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JRep {
    s: GenSet,
    y: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WRep {
    s: GenSet,
    z: Vec<Rat>,
}

fn check_len(s: GenSet, len: usize) -> Result<()> {
    let expected = 1usize << s.len();
    if len != expected {
        return Err(Error::AtomCountMismatch { expected, got: len });
    }
    Ok(())
}

/// In place: `v[j] <- Σ_{i ⊆ j} v[i]`.
fn zeta(v: &mut [Rat]) {
    let mut bit = 1;
    while bit < v.len() {
        for j in 0..v.len() {
            if j & bit != 0 {
                let lower = v[j ^ bit].clone();
                v[j] += lower;
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`zeta`].
fn mobius(v: &mut [Rat]) {
    let mut bit = 1;
    while bit < v.len() {
        for j in 0..v.len() {
            if j & bit != 0 {
                let lower = v[j ^ bit].clone();
                v[j] -= lower;
            }
        }
        bit <<= 1;
    }
}

impl JRep {
    pub fn new(s: GenSet, y: Vec<Rat>) -> Result<Self> {
        check_len(s, y.len())?;
        Ok(Self { s, y })
    }

    pub fn support(&self) -> GenSet {
        self.s
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.y
    }

    /// `y_r` for `r ⊆ s`.
    pub fn coeff(&self, r: GenSet) -> &Rat {
        &self.y[self.s.local_index(r)]
    }

    pub fn to_wrep(&self) -> WRep {
        let mut z = self.y.clone();
        zeta(&mut z);
        WRep { s: self.s, z }
    }

    pub fn realize(&self, gs: &GenSystem) -> SimpleFn {
        self.to_wrep().realize(gs)
    }
}

impl WRep {
    pub fn new(s: GenSet, z: Vec<Rat>) -> Result<Self> {
        check_len(s, z.len())?;
        Ok(Self { s, z })
    }

    pub fn support(&self) -> GenSet {
        self.s
    }

    pub fn values(&self) -> &[Rat] {
        &self.z
    }

    /// `z_r` for `r ⊆ s`.
    pub fn value(&self, r: GenSet) -> &Rat {
        &self.z[self.s.local_index(r)]
    }

    pub fn to_jrep(&self) -> JRep {
        let mut y = self.z.clone();
        mobius(&mut y);
        JRep { s: self.s, y }
    }

    /// The function taking the value `z_{X ∩ s}` at the point `F_X`.
    pub fn realize(&self, gs: &GenSystem) -> SimpleFn {
        SimpleFn::from_atoms(gs, |x| self.value(x & self.s).clone())
    }
}

/// The J-representation of `g` with support `s`, setting `y_r = 0` for every
/// `r` without the finite intersection property.
///
/// Fails with [`Error::SupportTooSmall`] when `g` does not factor through `s`,
/// naming two points that agree on `s` but not under `g`.
pub fn to_jrep(gs: &GenSystem, g: &SimpleFn, s: GenSet) -> Result<JRep> {
    for (i, atom) in gs.atoms().iter().enumerate() {
        let x = atom.set();
        let r = x & s;
        let j = gs.atom_index(r).expect("subsets of FIP sets are FIP");
        if g.value(i) != g.value(j) {
            return Err(Error::SupportTooSmall { s, first: r, second: x });
        }
    }
    let subsets = s.subsets();
    let mut y: Vec<Rat> =
        subsets.iter().map(|r| gs.atom_index(*r).map_or_else(Rat::zero, |j| g.value(j).clone())).collect();
    // Möbius over FIP r only touches FIP subsets, so the placeholders for
    // non-FIP entries never leak into a FIP coefficient.
    mobius(&mut y);
    for (yj, r) in y.iter_mut().zip(&subsets) {
        if !gs.is_fip(*r) {
            yj.set_zero();
        }
    }
    Ok(JRep { s, y })
}

/// `to_jrep` followed by the zeta transform.
pub fn to_wrep(gs: &GenSystem, g: &SimpleFn, s: GenSet) -> Result<WRep> {
    to_jrep(gs, g, s).map(|j| j.to_wrep())
}

/// Whether `g` factors through the generators in `s`.
pub fn factors_through(gs: &GenSystem, g: &SimpleFn, s: GenSet) -> bool {
    gs.atoms().iter().enumerate().all(|(i, atom)| {
        let j = gs.atom_index(atom.set() & s).expect("subsets of FIP sets are FIP");
        g.value(i) == g.value(j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::m1;
    use crate::rat::int;

    #[test]
    fn jrep_of_j_indicator() {
        let gs = m1();
        let au = gs.set_by_names(&["a", "u"]);
        let g = SimpleFn::indicator(&gs, &gs.j_element(au)).scale(&int(3));
        let j = to_jrep(&gs, &g, au).unwrap();
        for r in au.subsets() {
            let expected = if r == au { int(3) } else { int(0) };
            assert_eq!(j.coeff(r), &expected);
        }
        assert_eq!(j.realize(&gs), g);
        assert_eq!(to_wrep(&gs, &g, au).unwrap().realize(&gs), g);
    }

    #[test]
    fn support_too_small() {
        let gs = m1();
        let a = gs.set_by_names(&["a"]);
        let u = gs.set_by_names(&["u"]);
        let g = SimpleFn::indicator(&gs, &gs.g_element(0));
        match to_jrep(&gs, &g, u) {
            Err(Error::SupportTooSmall { s, first, second }) => {
                assert_eq!(s, u);
                assert_ne!(g.value(gs.atom_index(first).unwrap()), g.value(gs.atom_index(second).unwrap()));
                assert_eq!(first & u, second & u);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(factors_through(&gs, &g, a));
        assert!(!factors_through(&gs, &g, u));
    }

    #[test]
    fn non_fip_coefficients_vanish() {
        let gs = m1();
        let all = gs.all_gens();
        let g = SimpleFn::from_atoms(&gs, |x| int(x.bits() as i64));
        let j = to_jrep(&gs, &g, all).unwrap();
        assert!(j.coeff(gs.set_by_names(&["a", "b"])).is_zero());
        assert!(j.coeff(all).is_zero());
        assert_eq!(j.realize(&gs), g);
    }

    #[test]
    fn transforms_are_inverse() {
        let y: Vec<Rat> = (0..8).map(|i| int(i * i - 3)).collect();
        let j = JRep::new(GenSet(0b111), y.clone()).unwrap();
        assert_eq!(j.to_wrep().to_jrep(), j);
        assert!(JRep::new(GenSet(0b11), y).is_err());
    }
}
