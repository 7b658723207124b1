//! Canonical forms, membership in `A_D`, recovery of generators and norms from
//! integrals alone, the decomposition of simple functions over partitions, and
//! the separation-witness algorithm.

use num::{Signed, Zero};

use crate::algebra::GenSystem;
use crate::error::{Error, Result};
use crate::functionals::BlockFunctionals;
use crate::genset::GenSet;
use crate::measures::mu_n;
use crate::partition::{all_partitions, BlockSet, Partition};
use crate::rat::{abs, rat, Rat};
use crate::repr::{factors_through, to_wrep, WRep};
use crate::stone::SimpleFn;

/// Whether `w` collapses onto `s' ⊊ s`: `z_r = z_{r'}` for all FIP `r, r' ⊆ s`
/// agreeing on `s'`. Comparing every `r` against `r ∩ s'` is equivalent.
pub fn collapses_to(gs: &GenSystem, w: &WRep, s_prime: GenSet) -> bool {
    let s = w.support();
    debug_assert!(s_prime.is_subset(s));
    s.subsets().into_iter().filter(|r| gs.is_fip(*r)).all(|r| w.value(r) == w.value(r & s_prime))
}

pub fn is_irreducible(gs: &GenSystem, w: &WRep) -> bool {
    w.support().proper_subsets_canonical().into_iter().all(|sp| !collapses_to(gs, w, sp))
}

/// Collapses `w` until no proper subset of its support is collapsible,
/// taking the first collapsible `s'` in canonical order each round. The new
/// values are `z_t` on FIP `t ⊆ s'` (every cell `Ŵ(r, s∖r)` with `r ∩ s' = t`
/// merges into `Ŵ(t, s'∖t)`) and zero elsewhere.
pub fn simplify(gs: &GenSystem, w: &WRep) -> WRep {
    let mut current = w.clone();
    loop {
        let s = current.support();
        let Some(sp) = s.proper_subsets_canonical().into_iter().find(|sp| collapses_to(gs, &current, *sp)) else {
            return current;
        };
        let z = sp
            .subsets()
            .into_iter()
            .map(|t| if gs.is_fip(t) { current.value(t).clone() } else { Rat::zero() })
            .collect();
        current = WRep::new(sp, z).expect("one value per subset");
    }
}

/// The smallest set of generators `g` factors through. Supports are closed
/// under intersection, so this is also the support of every irreducible
/// W-representation of `g`.
pub fn minimal_support(gs: &GenSystem, g: &SimpleFn) -> GenSet {
    let w = to_wrep(gs, g, gs.all_gens()).expect("every function factors through all generators");
    simplify(gs, &w).support()
}

/// Membership in `A_D` straight from the definition: some `s` with exactly one
/// generator in each block carries an irreducible W-representation of `g`.
pub fn ad_representation(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> Option<WRep> {
    if d.is_empty() {
        return None;
    }
    let mut candidates = vec![GenSet::EMPTY];
    for block in d.blocks() {
        candidates = candidates.into_iter().flat_map(|s| block.iter().map(move |e| s.with(e))).collect();
    }
    candidates.into_iter().find_map(|s| {
        if !factors_through(gs, g, s) {
            return None;
        }
        let w = to_wrep(gs, g, s).expect("factors through s");
        is_irreducible(gs, &w).then_some(w)
    })
}

pub fn in_ad(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> bool {
    ad_representation(gs, g, d).is_some()
}

/// `μ_T(g)` for every `T`, and the predicates that only read those numbers.
#[derive(Clone, Debug)]
pub struct IntegralTable {
    m: usize,
    values: Vec<Rat>,
}

impl IntegralTable {
    pub fn new(gs: &GenSystem, g: &SimpleFn) -> Self {
        Self { m: gs.m(), values: gs.integral_table(g) }
    }

    pub fn get(&self, t: GenSet) -> &Rat {
        &self.values[t.bits() as usize]
    }

    fn universe(&self) -> GenSet {
        GenSet::full(self.m)
    }

    /// `μ_{T∖Z}(g) = μ_{T∪Z}(g)` for every `T`.
    pub fn is_inert(&self, z: GenSet) -> bool {
        (0u32..1 << self.m).all(|t| self.get(GenSet(t) - z) == self.get(GenSet(t) | z))
    }

    /// A `T` with `μ_{T∖T0}(g) ≠ μ_{T∪T0}(g)`, if any.
    pub fn activity_witness(&self, t0: GenSet) -> Option<GenSet> {
        (0u32..1 << self.m).map(GenSet).find(|t| self.get(*t - t0) != self.get(*t | t0))
    }

    /// Statement (ii): `μ_{T̄}(g) = μ_{T̄∪T_0}(g)` whenever `T̄ ∩ T_0 = T ∩ T_0`.
    pub fn absorbs_union(&self, t0: GenSet, t: GenSet) -> bool {
        let fixed = t & t0;
        (self.universe() - t0).subsets().into_iter().all(|x| self.get(fixed | x) == self.get(fixed | x | t0))
    }

    /// Statement (ii'): `μ_{T̄}(g) = μ_{T̄∖T_0}(g)` whenever `T̄ ∩ T_0 = T ∩ T_0`.
    pub fn absorbs_difference(&self, t0: GenSet, t: GenSet) -> bool {
        let fixed = t & t0;
        (self.universe() - t0).subsets().into_iter().all(|x| self.get(fixed | x) == self.get(x))
    }
}

/// Condition (⋆) and (⋆⋆) evaluated purely through integrals, enumerating
/// every partition of every block.
pub fn in_ad_criterion(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> bool {
    in_ad_criterion_with(&IntegralTable::new(gs, g), d)
}

pub fn in_ad_criterion_with(table: &IntegralTable, d: &Partition) -> bool {
    if d.is_empty() {
        return false;
    }
    let mut inert = vec![None; 1 << table.m];
    let mut is_inert = |z: GenSet| *inert[z.bits() as usize].get_or_insert_with(|| table.is_inert(z));
    let star = d.blocks().iter().all(|t0| !is_inert(*t0));
    star && d
        .blocks()
        .iter()
        .all(|t0| all_partitions(*t0).iter().all(|d0| d0.blocks().iter().filter(|z| !is_inert(**z)).count() <= 1))
}

/// Generator recovery for `g ∈ A_D`, reading nothing but `μ_T(g)`.
#[derive(Clone, Debug)]
pub struct AdRecovery {
    d: Partition,
    m: usize,
    table: IntegralTable,
}

impl AdRecovery {
    /// Fails with [`Error::NotInAD`] unless the integral criterion accepts `g`.
    pub fn new(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> Result<Self> {
        let table = IntegralTable::new(gs, g);
        if !in_ad_criterion_with(&table, d) {
            return Err(Error::NotInAD);
        }
        Ok(Self { d: d.clone(), m: gs.m(), table })
    }

    pub fn partition(&self) -> &Partition {
        &self.d
    }

    pub fn table(&self) -> &IntegralTable {
        &self.table
    }

    /// `ψ_{D,T_i,T}(g)`: `true` when (ii) holds and (ii') does not, `false`
    /// in the opposite case.
    pub fn psi(&self, block: usize, t: GenSet) -> Result<bool> {
        let t0 = self.d.block(block);
        match (self.table.absorbs_union(t0, t), self.table.absorbs_difference(t0, t)) {
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            _ => Err(Error::PsiUndetermined { block, t }),
        }
    }

    /// The generator whose membership pattern over all `T` equals the ψ bit
    /// vector of the block.
    pub fn block_generator(&self, block: usize) -> Result<usize> {
        let bits: Vec<bool> = (0u32..1 << self.m).map(|t| self.psi(block, GenSet(t))).collect::<Result<Vec<bool>>>()?;
        (0..self.m)
            .find(|b| bits.iter().enumerate().all(|(t, bit)| GenSet(t as u32).contains(*b) == *bit))
            .ok_or(Error::GeneratorUnrecoverable { block })
    }

    pub fn generators(&self) -> Result<Vec<usize>> {
        (0..self.d.len()).map(|i| self.block_generator(i)).collect()
    }

    /// `L_{D,P}(g) = λ(⋂_{i∈P} b_i)`.
    pub fn l_dp(&self, gs: &GenSystem, p: BlockSet) -> Result<Rat> {
        let mut r = GenSet::EMPTY;
        for i in p.iter() {
            r = r.with(self.block_generator(i)?);
        }
        Ok(gs.meet_measure(r))
    }

    pub fn n_dp(&self, gs: &GenSystem, p: BlockSet) -> Result<bool> {
        Ok(!self.l_dp(gs, p)?.is_zero())
    }
}

pub fn psi(gs: &GenSystem, g: &SimpleFn, d: &Partition, block: usize, t: GenSet) -> Result<bool> {
    AdRecovery::new(gs, g, d)?.psi(block, t)
}

pub fn l_dp(gs: &GenSystem, g: &SimpleFn, d: &Partition, p: BlockSet) -> Result<Rat> {
    AdRecovery::new(gs, g, d)?.l_dp(gs, p)
}

pub fn n_dp(gs: &GenSystem, g: &SimpleFn, d: &Partition, p: BlockSet) -> Result<bool> {
    AdRecovery::new(gs, g, d)?.n_dp(gs, p)
}

/// `max_P |Σ_{Q⊆P} θ_{C(Q)}(g)| · N_{D,P}(g)` over sets of blocks `P`.
pub fn norm_on_ad(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> Result<Rat> {
    let rec = AdRecovery::new(gs, g, d)?;
    let gens = rec.generators()?;
    let funcs = BlockFunctionals::new(gs, d, g);
    let mut best = Rat::zero();
    for p in d.all_blocks().subsets() {
        let r = GenSet::from_indices(p.iter().map(|i| gens[i]));
        if gs.meet_measure(r).is_zero() {
            continue;
        }
        let sum: Rat = p.subsets().into_iter().map(|q| funcs.theta(q).clone()).sum();
        best = best.max(sum.abs());
    }
    Ok(best)
}

/// Where a simple function sits in the union of the `A_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Constants have empty support, which cannot meet a block exactly once,
    /// so they lie in no `A_D`.
    Constant(Rat),
    Partitioned(Partition),
}

/// The coarsest partition (first in block-count order) with `g ∈ A_D`.
pub fn decompose_sk(gs: &GenSystem, g: &SimpleFn) -> Result<Decomposition> {
    if g.is_constant() {
        return Ok(Decomposition::Constant(g.value(0).clone()));
    }
    let s = minimal_support(gs, g);
    all_partitions(gs.all_gens())
        .into_iter()
        .find(|d| d.meets_exactly_once(s) && in_ad(gs, g, d))
        .map(Decomposition::Partitioned)
        .ok_or(Error::DecompositionFailed)
}

/// The trace of the separation algorithm on a nonzero `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    /// Minimal-cardinality FIP set with `h(F_s) ≠ 0`.
    pub s: GenSet,
    /// Whether `h` was negated so that `C > 0`.
    pub negated: bool,
    pub c: Rat,
    /// `h' ≥ C/2` on `Ŵ(s, t)`.
    pub t: GenSet,
    /// `(r, t_r)` for every `r ⊊ s`: `|h| ≤ δ` on `Ŵ(r, t_r ∪ (s∖r))`.
    pub t_r: Vec<(GenSet, GenSet)>,
    pub t_star: GenSet,
    /// `δ = (C/4)·λ(⋂_{b∈s} b)`, the certified lower bound.
    pub delta: Rat,
    pub n: usize,
    /// `μ_n(h)` for the original, un-negated `h`.
    pub value: Rat,
}

impl SeparationWitness {
    /// `|μ_n(h)| ≥ δ > 0`, checked exactly.
    pub fn certified(&self) -> bool {
        self.delta > Rat::zero() && abs(&self.value) >= self.delta
    }
}

fn holds_on_w(gs: &GenSystem, s: GenSet, t: GenSet, pred: impl Fn(usize) -> bool) -> bool {
    gs.atoms().iter().enumerate().filter(|(_, a)| s.is_subset(a.set()) && a.set().is_disjoint(t)).all(|(i, _)| pred(i))
}

pub fn separation_witness(gs: &GenSystem, h: &SimpleFn) -> Result<SeparationWitness> {
    let all = gs.all_gens();
    let s = all
        .subsets_canonical()
        .into_iter()
        .find(|s| gs.atom_index(*s).is_some_and(|i| !h.value(i).is_zero()))
        .ok_or(Error::ZeroFunction)?;
    let hs = h.value(gs.atom_index(s).expect("FIP"));
    let negated = hs.is_negative();
    let h_prime = if negated { -h } else { h.clone() };
    let c = abs(hs);

    let half = &c / rat(2, 1);
    let rest = all - s;
    let t = rest
        .subsets_canonical()
        .into_iter()
        .find(|t| holds_on_w(gs, s, *t, |i| h_prime.value(i) >= &half))
        .expect("t = G∖s isolates F_s");

    let delta = &c / rat(4, 1) * gs.meet_measure(s);
    let t_r: Vec<(GenSet, GenSet)> = s
        .proper_subsets_canonical()
        .into_iter()
        .map(|r| {
            let tr = rest
                .subsets_canonical()
                .into_iter()
                .find(|tr| holds_on_w(gs, r, *tr | (s - r), |i| abs(h.value(i)) <= delta))
                .expect("t_r = G∖s isolates F_r, where h vanishes");
            (r, tr)
        })
        .collect();
    let t_star = t_r.iter().fold(t, |acc, (_, tr)| acc | *tr);
    let n = (0..gs.index_len())
        .find(|n| {
            let active = gs.index_bits(*n);
            s.is_subset(active) && active.is_disjoint(t_star)
        })
        .expect("independent index family");
    let value = mu_n(gs, n)?.integrate(h);
    Ok(SeparationWitness { s, negated, c, t, t_r, t_star, delta, n, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::m1;
    use crate::rat::int;

    fn part(gs: &GenSystem, blocks: &[&[&str]]) -> Partition {
        Partition::new(gs.all_gens(), blocks.iter().map(|b| gs.set_by_names(b)).collect()).unwrap()
    }

    fn j_ind(gs: &GenSystem, names: &[&str]) -> SimpleFn {
        SimpleFn::indicator(gs, &gs.j_element(gs.set_by_names(names)))
    }

    #[test]
    fn simplify_examples() {
        let gs = m1();
        let ga = SimpleFn::indicator(&gs, &gs.g_element(0));
        let au = gs.set_by_names(&["a", "u"]);
        let w = to_wrep(&gs, &ga, au).unwrap();
        let simple = simplify(&gs, &w);
        assert_eq!(simple.support(), gs.set_by_names(&["a"]));
        assert_eq!(simple.realize(&gs), ga);
        assert_eq!(simplify(&gs, &simple), simple);
        let c = SimpleFn::constant(&gs, rat(5, 3));
        let wc = simplify(&gs, &to_wrep(&gs, &c, gs.all_gens()).unwrap());
        assert_eq!(wc.support(), GenSet::EMPTY);
        assert_eq!(wc.value(GenSet::EMPTY), &rat(5, 3));
    }

    #[test]
    fn ad_membership_examples() {
        let gs = m1();
        let ga = SimpleFn::indicator(&gs, &gs.g_element(0));
        let coarse = part(&gs, &[&["a", "b", "u"]]);
        let fine = part(&gs, &[&["a"], &["b"], &["u"]]);
        assert!(in_ad(&gs, &ga, &coarse) && in_ad_criterion(&gs, &ga, &coarse));
        assert!(!in_ad(&gs, &ga, &fine) && !in_ad_criterion(&gs, &ga, &fine));
        let zero = SimpleFn::zero(&gs);
        for d in [&coarse, &fine] {
            assert!(!in_ad(&gs, &zero, d) && !in_ad_criterion(&gs, &zero, d));
        }
    }

    #[test]
    fn generator_recovery_examples() {
        let gs = m1();
        let g = j_ind(&gs, &["a", "u"]);
        let d = part(&gs, &[&["a", "b"], &["u"]]);
        let rec = AdRecovery::new(&gs, &g, &d).unwrap();
        assert!(rec.psi(0, gs.set_by_names(&["a", "u"])).unwrap());
        assert!(!rec.psi(0, gs.set_by_names(&["b"])).unwrap());
        assert_eq!(rec.generators().unwrap(), vec![0, 2]);
        assert_eq!(rec.l_dp(&gs, d.all_blocks()).unwrap(), rat(1, 2));
        assert!(rec.n_dp(&gs, d.all_blocks()).unwrap());
        assert_eq!(norm_on_ad(&gs, &g, &d).unwrap(), int(1));
        assert_eq!(norm_on_ad(&gs, &g.scale(&int(2)), &d).unwrap(), int(2));
        let fine = part(&gs, &[&["a"], &["b"], &["u"]]);
        assert_eq!(AdRecovery::new(&gs, &g, &fine).unwrap_err(), Error::NotInAD);
    }

    #[test]
    fn decomposition_examples() {
        let gs = m1();
        let ga = SimpleFn::indicator(&gs, &gs.g_element(0));
        assert_eq!(decompose_sk(&gs, &ga).unwrap(), Decomposition::Partitioned(part(&gs, &[&["a", "b", "u"]])));
        let g = j_ind(&gs, &["a", "u"]);
        assert_eq!(decompose_sk(&gs, &g).unwrap(), Decomposition::Partitioned(part(&gs, &[&["a", "b"], &["u"]])));
        assert_eq!(decompose_sk(&gs, &SimpleFn::constant(&gs, int(7))).unwrap(), Decomposition::Constant(int(7)));
    }

    #[test]
    fn separation_examples() {
        let gs = m1();
        let h = j_ind(&gs, &["a"]);
        let w = separation_witness(&gs, &h).unwrap();
        assert_eq!(w.s, gs.set_by_names(&["a"]));
        assert_eq!(w.c, int(1));
        assert_eq!(w.delta, rat(1, 8));
        assert_eq!(w.n, 4);
        assert_eq!(w.value, rat(1, 2));
        assert!(w.certified());

        let c = SimpleFn::constant(&gs, rat(-3, 2));
        let wc = separation_witness(&gs, &c).unwrap();
        assert_eq!(wc.s, GenSet::EMPTY);
        assert!(wc.negated);
        assert_eq!(wc.value, rat(-3, 2));
        assert_eq!(separation_witness(&gs, &SimpleFn::zero(&gs)), Err(Error::ZeroFunction));
    }
}
