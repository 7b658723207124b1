//! Measures on the generated algebra: the separating sequence `μ_n`, the
//! product measures `μ_T^k`, integration, extension from a subalgebra, and
//! the half-mass deficiency search.

use std::sync::OnceLock;

use num::{Signed, Zero};

use crate::algebra::{AElem, GenSystem};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::genset::GenSet;
use crate::rat::{fmt_rat, one, rat, Rat};
use crate::stone::SimpleFn;

/// Default cap on the power `k` of `μ_T^k`.
pub const DEFAULT_POWER_CAP: u32 = 4;
/// Largest product space `Ω^k` that [`mu_tk`] will build.
pub const PRODUCT_POINT_LIMIT: usize = 1 << 16;

/// Exact measure on the generated algebra, as one weight per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureA {
    weights: Vec<Rat>,
    signed: bool,
}

impl MeasureA {
    pub fn probability(gs: &GenSystem, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != gs.atom_count() {
            return Err(Error::AtomCountMismatch { expected: gs.atom_count(), got: weights.len() });
        }
        if let Some(i) = weights.iter().position(Signed::is_negative) {
            return Err(Error::NotProbability(format!("atom #{i} has weight {}", fmt_rat(&weights[i]))));
        }
        let total: Rat = weights.iter().sum();
        if total != one() {
            return Err(Error::NotProbability(format!("total mass {}", fmt_rat(&total))));
        }
        Ok(Self { weights, signed: false })
    }

    pub fn signed(weights: Vec<Rat>) -> Self {
        Self { weights, signed: true }
    }

    pub fn point_mass(gs: &GenSystem, atom_index: usize) -> Self {
        let mut weights = vec![Rat::zero(); gs.atom_count()];
        weights[atom_index] = one();
        Self { weights, signed: false }
    }

    pub fn uniform(gs: &GenSystem) -> Self {
        let n = gs.atom_count() as i64;
        Self { weights: vec![rat(1, n); gs.atom_count()], signed: false }
    }

    /// `Σ c_i μ_i`, always flagged signed.
    pub fn combination<'a>(terms: impl IntoIterator<Item = (Rat, &'a MeasureA)>) -> MeasureA {
        let mut weights: Option<Vec<Rat>> = None;
        for (c, mu) in terms {
            let acc = weights.get_or_insert_with(|| vec![Rat::zero(); mu.weights.len()]);
            for (w, x) in acc.iter_mut().zip(&mu.weights) {
                *w += &c * x;
            }
        }
        MeasureA { weights: weights.unwrap_or_default(), signed: true }
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, atom_index: usize) -> &Rat {
        &self.weights[atom_index]
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }

    pub fn measure(&self, a: &AElem) -> Rat {
        a.atom_indices().map(|i| &self.weights[i]).sum()
    }

    pub fn integrate(&self, g: &SimpleFn) -> Rat {
        assert_eq!(g.values().len(), self.weights.len(), "function and measure over different algebras");
        g.values().iter().zip(&self.weights).filter(|(_, w)| !w.is_zero()).map(|(v, w)| v * w).sum()
    }
}

pub fn integrate(g: &SimpleFn, mu: &MeasureA) -> Rat {
    mu.integrate(g)
}

/// `μ_n(c) = λ(c(n))`. The entry of atom `r` at `n` is
/// `⋂_{r} b \ ⋃_{active(n) \ r} b` when `r ⊆ active(n)`, else empty.
pub fn mu_n(gs: &GenSystem, n: usize) -> Result<MeasureA> {
    if n >= gs.index_len() {
        return Err(Error::IndexOutOfRange { n, len: gs.index_len() });
    }
    let active = gs.index_bits(n);
    let weights = gs
        .atoms()
        .iter()
        .map(|atom| {
            let r = atom.set();
            if r.is_subset(active) {
                crate::algebra::w_measure(gs, r, active - r)
            } else {
                Rat::zero()
            }
        })
        .collect();
    Ok(MeasureA { weights, signed: false })
}

pub fn mu_tk(gs: &GenSystem, t: GenSet, k: u32) -> Result<MeasureA> {
    mu_tk_capped(gs, t, k, DEFAULT_POWER_CAP)
}

/// `μ_T^k` pulled back from the `k`-fold product space along
/// `G_b ↦ b × ... × b` for `b ∈ T` and `G_b ↦ ∅` otherwise.
pub fn mu_tk_capped(gs: &GenSystem, t: GenSet, k: u32, cap: u32) -> Result<MeasureA> {
    if k == 0 || k > cap {
        return Err(Error::PowerOverCap { k, cap });
    }
    let points = (gs.space().len() as u128).pow(k);
    if points > PRODUCT_POINT_LIMIT as u128 {
        return Err(Error::ProductSpaceTooLarge { points, limit: PRODUCT_POINT_LIMIT });
    }
    let space = gs.space();
    let product = space.power(k);
    let images: Vec<_> = (0..gs.m())
        .map(|i| if t.contains(i) { space.power_event(gs.gen(i), k) } else { product.empty_event() })
        .collect();
    let all = gs.all_gens();
    let weights = gs
        .atoms()
        .iter()
        .map(|atom| {
            let r = atom.set();
            let inside = r.iter().fold(product.full_event(), |acc, i| acc.intersection(&images[i]));
            let cell = (all - r).iter().fold(inside, |acc, i| acc.difference(&images[i]));
            product.measure(&cell)
        })
        .collect();
    Ok(MeasureA { weights, signed: false })
}

/// Lazily built tables of `μ_T^1` and `μ_T^2` for every `T`.
#[derive(Clone, Debug, Default)]
pub struct MuCache {
    tables: [OnceLock<Vec<MeasureA>>; 2],
}

impl GenSystem {
    /// `μ_T^k` for `k ∈ {1, 2}`, memoized per system.
    pub fn mu_t(&self, t: GenSet, k: u32) -> &MeasureA {
        assert!(k == 1 || k == 2, "only k = 1, 2 are cached");
        let table = self.mu_cache.tables[k as usize - 1].get_or_init(|| {
            Exec::default().map_range(1 << self.m(), |bits| {
                mu_tk_capped(self, GenSet(bits as u32), k, 2).expect("small product space")
            })
        });
        &table[t.bits() as usize]
    }

    /// `μ_T(g)` for every `T ⊆ G`, indexed by the bits of `T`.
    pub fn integral_table(&self, g: &SimpleFn) -> Vec<Rat> {
        (0u32..1 << self.m()).map(|bits| self.mu_t(GenSet(bits), 1).integrate(g)).collect()
    }
}

/// A probability measure on a subalgebra, given by its atoms (cells) and
/// their masses.
#[derive(Clone, Debug)]
pub struct SubalgebraMeasure {
    pub cells: Vec<AElem>,
    pub masses: Vec<Rat>,
}

impl SubalgebraMeasure {
    pub fn validate(&self, gs: &GenSystem) -> Result<()> {
        if self.cells.len() != self.masses.len() {
            return Err(Error::CellsNotPartition(format!(
                "{} cells but {} masses",
                self.cells.len(),
                self.masses.len()
            )));
        }
        let mut seen = gs.bottom();
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::CellsNotPartition(format!("cell #{i} is empty")));
            }
            if !cell.intersection(&seen).is_empty() {
                return Err(Error::CellsNotPartition(format!("cell #{i} overlaps an earlier cell")));
            }
            seen = seen.union(cell);
        }
        if seen != gs.top() {
            return Err(Error::CellsNotPartition("cells do not cover the top element".into()));
        }
        if let Some(cell) = self.masses.iter().position(Signed::is_negative) {
            return Err(Error::NegativeCellMass { cell, mass: fmt_rat(&self.masses[cell]) });
        }
        let sum: Rat = self.masses.iter().sum();
        if sum != one() {
            return Err(Error::CellMassNotNormalized { sum: fmt_rat(&sum) });
        }
        Ok(())
    }

    /// Masses that `mu` gives to each cell.
    pub fn restrict(&self, mu: &MeasureA) -> Vec<Rat> {
        self.cells.iter().map(|c| mu.measure(c)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum ExtensionStrategy {
    /// Split each cell's mass evenly over its atoms.
    Uniform,
    /// Split proportionally to a reference measure; cells the reference does
    /// not charge fall back to an even split.
    Proportional(MeasureA),
}

pub fn extend_measure(gs: &GenSystem, nu: &SubalgebraMeasure, strategy: &ExtensionStrategy) -> Result<MeasureA> {
    nu.validate(gs)?;
    let mut weights = vec![Rat::zero(); gs.atom_count()];
    for (cell, mass) in nu.cells.iter().zip(&nu.masses) {
        let reference = match strategy {
            ExtensionStrategy::Proportional(r) if !r.measure(cell).is_zero() => Some(r),
            _ => None,
        };
        match reference {
            Some(r) => {
                let total = r.measure(cell);
                for i in cell.atom_indices() {
                    weights[i] = mass * r.weight(i) / &total;
                }
            }
            None => {
                let share = mass / Rat::from_integer((cell.len() as i64).into());
                for i in cell.atom_indices() {
                    weights[i] = share.clone();
                }
            }
        }
    }
    Ok(MeasureA { weights, signed: false })
}

/// A nonempty element that every measure in the family charges with at most
/// one half, or `None` if the family gives more than half to some measure on
/// every nonempty element.
///
/// For non-negative measures a witness exists iff a single atom is one, and
/// the first witness in numeric bitmask order is always that atom.
pub fn mn_deficiency_witness(gs: &GenSystem, measures: &[MeasureA]) -> Result<Option<AElem>> {
    if measures.is_empty() {
        return Err(Error::EmptyMeasureFamily);
    }
    if let Some(index) = measures.iter().position(MeasureA::is_signed) {
        return Err(Error::SignedMeasureInFamily { index });
    }
    let half = rat(1, 2);
    let found = (0..gs.atom_count()).find(|i| measures.iter().all(|mu| *mu.weight(*i) <= half));
    Ok(found.map(|i| gs.aelem_of([gs.atom(i).set()])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::m1;
    use crate::rat::int;

    #[test]
    fn mu_n_examples() {
        let gs = m1();
        let ga = gs.g_element(0);
        assert_eq!(mu_n(&gs, 5).unwrap().measure(&ga), rat(1, 2));
        assert_eq!(mu_n(&gs, 2).unwrap().measure(&ga), int(0));
        for n in 0..gs.index_len() {
            assert_eq!(mu_n(&gs, n).unwrap().measure(&gs.top()), int(1));
        }
        assert_eq!(mu_n(&gs, 8), Err(Error::IndexOutOfRange { n: 8, len: 8 }));
    }

    #[test]
    fn mu_n_matches_componentwise_realization() {
        let gs = m1();
        for n in 0..gs.index_len() {
            let mu = mu_n(&gs, n).unwrap();
            for (i, atom) in gs.atoms().iter().enumerate() {
                let entry = gs.atom_seq(*atom).entry(n).clone();
                assert_eq!(mu.weight(i), &gs.space().measure(&entry));
            }
        }
    }

    #[test]
    fn mu_tk_examples() {
        let gs = m1();
        let a = gs.set_by_names(&["a"]);
        let mu = mu_tk(&gs, a, 1).unwrap();
        assert_eq!(mu.measure(&gs.g_element(0)), rat(1, 2));
        assert_eq!(mu.measure(&gs.g_element(2)), int(0));
        assert_eq!(mu_tk(&gs, a, 2).unwrap().measure(&gs.j_element(a)), rat(1, 4));
        for k in 1..=3 {
            let empty = mu_tk(&gs, GenSet::EMPTY, k).unwrap();
            assert_eq!(empty, MeasureA::point_mass(&gs, 0));
        }
        assert_eq!(mu_tk(&gs, a, 5), Err(Error::PowerOverCap { k: 5, cap: 4 }));
        assert_eq!(mu_tk(&gs, a, 0), Err(Error::PowerOverCap { k: 0, cap: 4 }));
        assert_eq!(gs.mu_t(a, 2), &mu_tk(&gs, a, 2).unwrap());
    }

    #[test]
    fn integration_examples() {
        let gs = m1();
        let mu = mu_n(&gs, 6).unwrap();
        let ga = gs.g_element(0);
        assert_eq!(mu.integrate(&SimpleFn::indicator(&gs, &ga)), mu.measure(&ga));
        assert_eq!(mu.integrate(&SimpleFn::constant(&gs, rat(5, 3))), rat(5, 3));
        // f = (1/(2λ(b))) 1_{G_b}
        let b = 1;
        let f = SimpleFn::indicator(&gs, &gs.g_element(b))
            .scale(&(int(1) / (int(2) * gs.meet_measure(GenSet::singleton(b)))));
        for n in 0..gs.index_len() {
            let expected = if gs.in_index_set(b, n) { rat(1, 2) } else { int(0) };
            assert_eq!(mu_n(&gs, n).unwrap().integrate(&f), expected);
        }
    }

    #[test]
    fn extension_examples() {
        let gs = m1();
        let trivial = SubalgebraMeasure { cells: vec![gs.top()], masses: vec![int(1)] };
        assert_eq!(extend_measure(&gs, &trivial, &ExtensionStrategy::Uniform).unwrap(), MeasureA::uniform(&gs));

        let mu = mu_n(&gs, 7).unwrap();
        let identity = SubalgebraMeasure {
            cells: (0..gs.atom_count()).map(|i| gs.aelem_of([gs.atom(i).set()])).collect(),
            masses: mu.weights().to_vec(),
        };
        assert_eq!(extend_measure(&gs, &identity, &ExtensionStrategy::Uniform).unwrap(), mu);

        let gu = gs.g_element(2);
        let by_u = SubalgebraMeasure { cells: vec![gu.clone(), gu.complement()], masses: vec![int(1), int(0)] };
        let ext = extend_measure(&gs, &by_u, &ExtensionStrategy::Uniform).unwrap();
        for (i, atom) in gs.atoms().iter().enumerate() {
            let expected = if atom.set().contains(2) { rat(1, 3) } else { int(0) };
            assert_eq!(ext.weight(i), &expected);
        }
        assert_eq!(by_u.restrict(&ext), by_u.masses);
    }

    #[test]
    fn extension_rejects_bad_input() {
        let gs = m1();
        let gu = gs.g_element(2);
        let short = SubalgebraMeasure { cells: vec![gu.clone(), gu.complement()], masses: vec![rat(1, 2), rat(1, 4)] };
        assert!(matches!(
            extend_measure(&gs, &short, &ExtensionStrategy::Uniform),
            Err(Error::CellMassNotNormalized { .. })
        ));
        let neg = SubalgebraMeasure { cells: vec![gu.clone(), gu.complement()], masses: vec![int(2), int(-1)] };
        assert!(matches!(
            extend_measure(&gs, &neg, &ExtensionStrategy::Uniform),
            Err(Error::NegativeCellMass { cell: 1, .. })
        ));
        let overlap = SubalgebraMeasure { cells: vec![gu.clone(), gs.top()], masses: vec![int(1), int(0)] };
        assert!(matches!(extend_measure(&gs, &overlap, &ExtensionStrategy::Uniform), Err(Error::CellsNotPartition(_))));
    }

    #[test]
    fn deficiency_examples() {
        let gs = m1();
        let x = 3;
        let found = mn_deficiency_witness(&gs, &[MeasureA::point_mass(&gs, x)]).unwrap().unwrap();
        assert_eq!(found.len(), 1);
        assert!(!found.contains_atom(x));

        let all: Vec<MeasureA> = (0..gs.atom_count()).map(|i| MeasureA::point_mass(&gs, i)).collect();
        assert_eq!(mn_deficiency_witness(&gs, &all).unwrap(), None);

        let seq: Vec<MeasureA> = (0..gs.index_len()).map(|n| mu_n(&gs, n).unwrap()).collect();
        let w = mn_deficiency_witness(&gs, &seq).unwrap().unwrap();
        assert_eq!(w, gs.aelem_of([gs.set_by_names(&["a"])]));

        assert_eq!(mn_deficiency_witness(&gs, &[]), Err(Error::EmptyMeasureFamily));
    }
}
