//! Points of the Stone space and simple functions on it.
//!
//! A point is the ultrafilter `F_X` for a FIP set `X`; at finite scale it
//! carries the same data as the atom `X`, and `F_X` contains an element iff
//! that element contains the atom `X`.

use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};

use crate::algebra::{AElem, Atom, GenSystem};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::rat::{pow, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    x: GenSet,
}

impl Point {
    pub fn of(atom: Atom) -> Point {
        Point { x: atom.set() }
    }

    /// The point `F_X`; `None` unless `x` has the finite intersection
    /// property.
    pub fn new(gs: &GenSystem, x: GenSet) -> Option<Point> {
        gs.atom_index(x).map(|_| Point { x })
    }

    pub fn set(self) -> GenSet {
        self.x
    }
}

pub fn points(gs: &GenSystem) -> Vec<Point> {
    gs.atoms().iter().map(|a| Point::of(*a)).collect()
}

fn point_index(gs: &GenSystem, p: Point) -> usize {
    gs.atom_index(p.x).expect("points are atoms")
}

pub fn membership(gs: &GenSystem, a: &AElem, p: Point) -> bool {
    a.contains_atom(point_index(gs, p))
}

/// How [`density_basis`] picks its `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMode {
    /// Smallest `s ⊆ X` (then smallest `t`) in canonical subset order.
    Minimal,
    /// `s = X` exactly, smallest `t`.
    PointSupport,
}

/// A basic clopen `Ŵ(s,t)` with `p ∈ Ŵ(s,t) ⊆ â`.
///
/// Candidates keep `s ⊆ X` and `t ∩ X = ∅`, which is exactly `p ∈ Ŵ(s,t)`.
pub fn density_basis(gs: &GenSystem, a: &AElem, p: Point, mode: BasisMode) -> Result<(GenSet, GenSet)> {
    if a.is_empty() {
        return Err(Error::EmptyElement);
    }
    if !membership(gs, a, p) {
        return Err(Error::PointNotInElement { point: p.x });
    }
    let outside: Vec<GenSet> =
        gs.atoms().iter().enumerate().filter(|(i, _)| !a.contains_atom(*i)).map(|(_, at)| at.set()).collect();
    let free = gs.all_gens() - p.x;
    let minimal = mode == BasisMode::Minimal;
    let mut bad = Vec::with_capacity(outside.len());
    for s in gs.canonical_subsets(p.x).filter(|s| minimal || *s == p.x) {
        // atoms of Ŵ(s, ∅) outside a; t has to cut every one of them
        bad.clear();
        bad.extend(outside.iter().copied().filter(|r| s.is_subset(*r)));
        if let Some(t) = gs.canonical_subsets(free).find(|t| bad.iter().all(|r| !r.is_disjoint(*t))) {
            return Ok((s, t));
        }
    }
    unreachable!("s = X, t = G \\ X always isolates the point's own atom")
}

/// A simple function: one exact value per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFn {
    values: Vec<Rat>,
}

impl SimpleFn {
    pub fn new(gs: &GenSystem, values: Vec<Rat>) -> Result<Self> {
        if values.len() != gs.atom_count() {
            return Err(Error::AtomCountMismatch { expected: gs.atom_count(), got: values.len() });
        }
        Ok(Self { values })
    }

    pub fn from_atoms(gs: &GenSystem, f: impl Fn(GenSet) -> Rat) -> Self {
        Self { values: gs.atoms().iter().map(|a| f(a.set())).collect() }
    }

    pub fn constant(gs: &GenSystem, c: Rat) -> Self {
        Self { values: vec![c; gs.atom_count()] }
    }

    pub fn zero(gs: &GenSystem) -> Self {
        Self::constant(gs, Rat::zero())
    }

    pub fn indicator(gs: &GenSystem, a: &AElem) -> Self {
        Self {
            values: (0..gs.atom_count())
                .map(|i| if a.contains_atom(i) { Rat::from_integer(1.into()) } else { Rat::zero() })
                .collect(),
        }
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, atom_index: usize) -> &Rat {
        &self.values[atom_index]
    }

    pub fn eval(&self, gs: &GenSystem, p: Point) -> Rat {
        self.values[point_index(gs, p)].clone()
    }

    pub fn sup_norm(&self) -> Rat {
        self.values.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn scale(&self, c: &Rat) -> SimpleFn {
        SimpleFn { values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Pointwise power.
    pub fn powi(&self, p: u32) -> SimpleFn {
        SimpleFn { values: self.values.iter().map(|v| pow(v, p)).collect() }
    }

    fn zip(&self, other: &SimpleFn, f: impl Fn(&Rat, &Rat) -> Rat) -> SimpleFn {
        assert_eq!(self.values.len(), other.values.len(), "functions over different algebras");
        SimpleFn { values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Add for &SimpleFn {
    type Output = SimpleFn;
    fn add(self, rhs: &SimpleFn) -> SimpleFn {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &SimpleFn {
    type Output = SimpleFn;
    fn sub(self, rhs: &SimpleFn) -> SimpleFn {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &SimpleFn {
    type Output = SimpleFn;
    fn mul(self, rhs: &SimpleFn) -> SimpleFn {
        self.zip(rhs, |a, b| a * b)
    }
}

impl Neg for &SimpleFn {
    type Output = SimpleFn;
    fn neg(self) -> SimpleFn {
        SimpleFn { values: self.values.iter().map(|v| -v).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::m1;
    use crate::rat::{int, rat};

    fn pt(gs: &GenSystem, names: &[&str]) -> Point {
        Point::new(gs, gs.set_by_names(names)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let gs = m1();
        let ga = gs.g_element(0);
        assert!(membership(&gs, &ga, pt(&gs, &["a", "u"])));
        let p = pt(&gs, &["a"]);
        let without = ga.difference(&gs.aelem_of([p.set()]));
        assert!(!membership(&gs, &without, p));
        for p in points(&gs) {
            assert!(membership(&gs, &gs.top(), p));
        }
        assert!(Point::new(&gs, gs.set_by_names(&["a", "b"])).is_none());
    }

    #[test]
    fn density_examples() {
        let gs = m1();
        let u = gs.set_by_names(&["u"]);
        let gu = gs.g_element(2);
        assert_eq!(density_basis(&gs, &gu, pt(&gs, &["u"]), BasisMode::Minimal).unwrap(), (u, GenSet::EMPTY));

        let r = gs.set_by_names(&["a"]);
        let single = gs.aelem_of([r]);
        let (s, t) = density_basis(&gs, &single, pt(&gs, &["a"]), BasisMode::PointSupport).unwrap();
        assert_eq!(s, r);
        // only {a,u} has to be cut away, so the canonical minimal t is {u}
        assert_eq!(t, u);
        // (r, G \ r) also works
        assert!(gs.w_element(r, gs.all_gens() - r).is_subset(&single));

        for p in points(&gs) {
            assert_eq!(density_basis(&gs, &gs.top(), p, BasisMode::Minimal).unwrap(), (GenSet::EMPTY, GenSet::EMPTY));
        }
        assert_eq!(density_basis(&gs, &gs.bottom(), pt(&gs, &[]), BasisMode::Minimal), Err(Error::EmptyElement));
    }

    #[test]
    fn eval_and_norm() {
        let gs = m1();
        let g = &SimpleFn::indicator(&gs, &gs.g_element(0)) - &SimpleFn::indicator(&gs, &gs.g_element(1));
        assert_eq!(g.eval(&gs, pt(&gs, &["a", "u"])), int(1));
        assert_eq!(g.eval(&gs, pt(&gs, &[])), int(0));
        assert_eq!(g.sup_norm(), int(1));
        assert_eq!(SimpleFn::zero(&gs).sup_norm(), int(0));
        assert_eq!(SimpleFn::constant(&gs, rat(-7, 3)).sup_norm(), rat(7, 3));
    }
}
