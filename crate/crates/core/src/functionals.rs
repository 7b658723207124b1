//! Inclusion-exclusion functionals over a partition and the moment identities
//! built from them.

use std::collections::HashMap;

use num::{BigInt, One, Zero};

use crate::algebra::GenSystem;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::genset::GenSet;
use crate::measures::MeasureA;
use crate::partition::{BlockSet, Partition};
use crate::rat::{pow, root_approx, Rat};
use crate::repr::{factors_through, to_jrep};
use crate::stone::SimpleFn;

fn sign(n: usize) -> Rat {
    if n.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `ν_C^k = Σ_{B ⊆ C} (-1)^{|C∖B|} μ_{T_B}^k` as a signed measure.
pub fn nu_measure(gs: &GenSystem, d: &Partition, c: BlockSet, k: u32) -> MeasureA {
    MeasureA::combination(c.subsets().into_iter().map(|b| (sign((c - b).len()), gs.mu_t(d.union_of(b), k))))
}

fn guarded(nu1: &Rat, nu2: &Rat) -> (Rat, Rat) {
    let theta = if nu2.is_zero() { Rat::zero() } else { nu1 * nu1 / nu2 };
    let eta = if theta.is_zero() { Rat::zero() } else { nu1 / &theta };
    (theta, eta)
}

/// `D`, a set `C` of its blocks, and the cached measures `ν_C^1`, `ν_C^2`.
#[derive(Clone, Debug)]
pub struct FunctionalContext {
    d: Partition,
    c: BlockSet,
    t_c: GenSet,
    nu: [MeasureA; 2],
}

impl FunctionalContext {
    pub fn new(gs: &GenSystem, d: &Partition, c: BlockSet) -> Self {
        assert!(c.is_subset(d.all_blocks()), "C must be a set of blocks of D");
        Self { d: d.clone(), c, t_c: d.union_of(c), nu: [nu_measure(gs, d, c, 1), nu_measure(gs, d, c, 2)] }
    }

    pub fn partition(&self) -> &Partition {
        &self.d
    }

    pub fn blocks(&self) -> BlockSet {
        self.c
    }

    pub fn t_c(&self) -> GenSet {
        self.t_c
    }

    pub fn nu_measure(&self, k: u32) -> &MeasureA {
        &self.nu[k as usize - 1]
    }

    pub fn nu(&self, g: &SimpleFn, k: u32) -> Rat {
        assert!(k == 1 || k == 2, "k must be 1 or 2");
        self.nu_measure(k).integrate(g)
    }

    pub fn theta(&self, g: &SimpleFn) -> Rat {
        guarded(&self.nu(g, 1), &self.nu(g, 2)).0
    }

    pub fn eta(&self, g: &SimpleFn) -> Rat {
        guarded(&self.nu(g, 1), &self.nu(g, 2)).1
    }
}

pub fn nu_ck(gs: &GenSystem, d: &Partition, c: BlockSet, g: &SimpleFn, k: u32) -> Rat {
    FunctionalContext::new(gs, d, c).nu(g, k)
}

pub fn theta_c(gs: &GenSystem, d: &Partition, c: BlockSet, g: &SimpleFn) -> Rat {
    FunctionalContext::new(gs, d, c).theta(g)
}

pub fn eta_c(gs: &GenSystem, d: &Partition, c: BlockSet, g: &SimpleFn) -> Rat {
    FunctionalContext::new(gs, d, c).eta(g)
}

/// `ν`, `θ`, `η` of one function for every set of blocks of `D`, indexed by
/// the bits of `C`.
#[derive(Clone, Debug)]
pub struct BlockFunctionals {
    nu1: Vec<Rat>,
    nu2: Vec<Rat>,
    theta: Vec<Rat>,
    eta: Vec<Rat>,
}

impl BlockFunctionals {
    pub fn new(gs: &GenSystem, d: &Partition, g: &SimpleFn) -> Self {
        let i1 = gs.integral_table(g);
        let i2: Vec<Rat> = (0u32..1 << gs.m()).map(|t| gs.mu_t(GenSet(t), 2).integrate(g)).collect();
        let count = 1usize << d.len();
        let signed_sum = |table: &[Rat], c: BlockSet| -> Rat {
            c.subsets().into_iter().map(|b| sign((c - b).len()) * &table[d.union_of(b).bits() as usize]).sum()
        };
        let nu1: Vec<Rat> = (0..count).map(|c| signed_sum(&i1, GenSet(c as u32))).collect();
        let nu2: Vec<Rat> = (0..count).map(|c| signed_sum(&i2, GenSet(c as u32))).collect();
        let (theta, eta) = nu1.iter().zip(&nu2).map(|(a, b)| guarded(a, b)).unzip();
        Self { nu1, nu2, theta, eta }
    }

    pub fn nu(&self, c: BlockSet, k: u32) -> &Rat {
        match k {
            1 => &self.nu1[c.bits() as usize],
            2 => &self.nu2[c.bits() as usize],
            _ => panic!("k must be 1 or 2"),
        }
    }

    pub fn theta(&self, c: BlockSet) -> &Rat {
        &self.theta[c.bits() as usize]
    }

    pub fn eta(&self, c: BlockSet) -> &Rat {
        &self.eta[c.bits() as usize]
    }
}

/// `∫ g^p dμ_Z`.
pub fn phi_direct(gs: &GenSystem, z: GenSet, p: u32, g: &SimpleFn) -> Result<Rat> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    Ok(gs.mu_t(z, 1).integrate(&g.powi(p)))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The multinomial sum over compositions `β` of `p` indexed by sets of blocks
/// `C ⊆ D(Z)`, with no domain checks. Terms with `θ_C = 0` vanish and are
/// skipped; the rest are grouped by the union `C(β)` of the active sets, so
/// the cost is polynomial in `p` instead of enumerating every composition.
pub fn lambda_sum(gs: &GenSystem, z: GenSet, p: u32, g: &SimpleFn, d: &Partition) -> Result<Rat> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    let funcs = BlockFunctionals::new(gs, d, g);
    let dz = d.blocks_inside(z);
    let active: Vec<(BlockSet, &Rat)> =
        dz.subsets().into_iter().map(|c| (c, funcs.theta(c))).filter(|(_, t)| !t.is_zero()).collect();
    let inv_fact: Vec<Rat> = (0..=p).map(|n| Rat::from_integer(factorial(n)).recip()).collect();

    // (used, union of active sets) -> Σ Π θ^β / β!
    let mut states: HashMap<(u32, u32), Rat> = HashMap::from([((0, 0), Rat::one())]);
    for (c, theta) in &active {
        let powers: Vec<Rat> = (0..=p).map(|b| pow(theta, b) * &inv_fact[b as usize]).collect();
        let mut next: HashMap<(u32, u32), Rat> = HashMap::new();
        for ((used, union), weight) in &states {
            for b in 0..=(p - used) {
                let key = (used + b, if b == 0 { *union } else { union | c.bits() });
                *next.entry(key).or_insert_with(Rat::zero) += weight * &powers[b as usize];
            }
        }
        states = next;
    }
    let p_fact = Rat::from_integer(factorial(p));
    Ok(states
        .into_iter()
        .filter(|((used, _), _)| *used == p)
        .map(|((_, union), weight)| weight * funcs.eta(GenSet(union)))
        .sum::<Rat>()
        * p_fact)
}

/// A support `s` meeting each block of `D` at most once such that `g` has a
/// J-representation on `s` with every FIP coefficient nonzero.
pub fn s_prime_support(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> Option<GenSet> {
    let mut candidates = vec![GenSet::EMPTY];
    for block in d.blocks() {
        candidates = candidates
            .into_iter()
            .flat_map(|s| std::iter::once(s).chain(block.iter().map(move |e| s.with(e))))
            .collect();
    }
    candidates.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    candidates.into_iter().find(|s| {
        factors_through(gs, g, *s) && {
            let j = to_jrep(gs, g, *s).expect("factors through s");
            s.subsets().into_iter().filter(|r| gs.is_fip(*r)).all(|r| !j.coeff(r).is_zero())
        }
    })
}

pub fn in_s_prime(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> bool {
    s_prime_support(gs, g, d).is_some()
}

/// The reconstruction of `φ_{Z,p}(g)` from `θ` and `η`, defined when `D`
/// refines `{Z, ∁Z}` and `g` lies in `S'_D`.
pub fn phi_reconstructed(gs: &GenSystem, z: GenSet, p: u32, g: &SimpleFn, d: &Partition) -> Result<Rat> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    if !d.splits(z) {
        return Err(Error::PartitionDoesNotSplit { z });
    }
    if !in_s_prime(gs, g, d) {
        return Err(Error::NotInSPrime);
    }
    lambda_sum(gs, z, p, g, d)
}

/// Replaces every zero J-coefficient on FIP subsets of `s` by `eps`.
pub fn perturb_zero_coefficients(gs: &GenSystem, g: &SimpleFn, s: GenSet, eps: &Rat) -> Result<SimpleFn> {
    let j = to_jrep(gs, g, s)?;
    let y: Vec<Rat> = s
        .subsets()
        .into_iter()
        .map(|r| {
            let y = j.coeff(r);
            if gs.is_fip(r) && y.is_zero() {
                eps.clone()
            } else {
                y.clone()
            }
        })
        .collect();
    Ok(crate::repr::JRep::new(s, y)?.realize(gs))
}

/// `max_Z max{|g(atom)| : μ_Z(atom) > 0}`.
pub fn norm_by_support(gs: &GenSystem, g: &SimpleFn) -> Rat {
    let per_z = Exec::default().map_range(1 << gs.m(), |t| {
        let mu = gs.mu_t(GenSet(t as u32), 1);
        (0..gs.atom_count())
            .filter(|i| mu.weight(*i) > &Rat::zero())
            .map(|i| crate::rat::abs(g.value(i)))
            .max()
            .unwrap_or_else(Rat::zero)
    });
    per_z.into_iter().max().unwrap_or_else(Rat::zero)
}

/// `max_Z (μ_Z(g^{2p}))^{1/(2p)}` for `p = 1..=p_max`, exact moments and one
/// floating root each.
pub fn moment_norms(gs: &GenSystem, g: &SimpleFn, p_max: u32) -> Vec<f64> {
    let squares: Vec<Rat> = g.values().iter().map(|v| v * v).collect();
    let per_z = Exec::default().map_range(1 << gs.m(), |t| {
        let mu = gs.mu_t(GenSet(t as u32), 1);
        let support: Vec<usize> = (0..gs.atom_count()).filter(|i| !mu.weight(*i).is_zero()).collect();
        let mut current: Vec<Rat> = support.iter().map(|i| squares[*i].clone()).collect();
        (1..=p_max)
            .map(|p| {
                if p > 1 {
                    for (c, i) in current.iter_mut().zip(&support) {
                        *c *= &squares[*i];
                    }
                }
                let moment: Rat = current.iter().zip(&support).map(|(c, i)| c * mu.weight(*i)).sum();
                root_approx(&moment, 2 * p)
            })
            .collect::<Vec<f64>>()
    });
    (0..p_max as usize).map(|p| per_z.iter().map(|row| row[p]).fold(0.0, f64::max)).collect()
}

pub fn norm_by_moments(gs: &GenSystem, g: &SimpleFn, p_max: u32) -> f64 {
    assert!(p_max >= 1, "p_max must be positive");
    moment_norms(gs, g, p_max).pop().expect("p_max >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::m1;
    use crate::rat::{int, rat, to_f64};

    fn d_singletons(gs: &GenSystem) -> Partition {
        Partition::singletons(gs.all_gens())
    }

    fn j_ind(gs: &GenSystem, names: &[&str]) -> SimpleFn {
        SimpleFn::indicator(gs, &gs.j_element(gs.set_by_names(names)))
    }

    #[test]
    fn nu_examples() {
        let gs = m1();
        let d = d_singletons(&gs);
        let au = gs.set_by_names(&["a", "u"]);
        let c = d.blocks_meeting(au);
        let g = j_ind(&gs, &["a", "u"]);
        assert_eq!(nu_ck(&gs, &d, c, &g, 1), rat(1, 2));
        assert_eq!(nu_ck(&gs, &d, c, &g, 2), rat(1, 4));
        for h in [g.clone(), SimpleFn::from_atoms(&gs, |x| int(x.bits() as i64 + 1))] {
            let at_empty = h.value(gs.atom_index(GenSet::EMPTY).unwrap()).clone();
            assert_eq!(nu_ck(&gs, &d, GenSet::EMPTY, &h, 1), at_empty);
        }
        // C strictly above C_r
        assert_eq!(nu_ck(&gs, &d, d.all_blocks(), &g, 1), int(0));
    }

    #[test]
    fn theta_eta_examples() {
        let gs = m1();
        let d = d_singletons(&gs);
        let au = gs.set_by_names(&["a", "u"]);
        let g = j_ind(&gs, &["a", "u"]).scale(&int(3));
        let ctx = FunctionalContext::new(&gs, &d, d.blocks_meeting(au));
        assert_eq!(ctx.nu(&g, 1), rat(3, 2));
        assert_eq!(ctx.nu(&g, 2), rat(3, 4));
        assert_eq!(ctx.theta(&g), int(3));
        assert_eq!(ctx.eta(&g), rat(1, 2));
        let zero = SimpleFn::zero(&gs);
        for c in d.all_blocks().subsets() {
            assert_eq!(theta_c(&gs, &d, c, &zero), int(0));
            assert_eq!(eta_c(&gs, &d, c, &zero), int(0));
        }
        let funcs = BlockFunctionals::new(&gs, &d, &g);
        assert_eq!(funcs.theta(d.blocks_meeting(au)), &int(3));
    }

    #[test]
    fn reconstruction_example() {
        let gs = m1();
        let d = d_singletons(&gs);
        let z = gs.set_by_names(&["a", "u"]);
        let g = j_ind(&gs, &["a"]).scale(&int(3));
        assert_eq!(phi_direct(&gs, z, 2, &g).unwrap(), rat(9, 2));
        assert_eq!(lambda_sum(&gs, z, 2, &g, &d).unwrap(), rat(9, 2));
        // y_∅ = 0, so g itself is outside S'_D
        assert_eq!(phi_reconstructed(&gs, z, 2, &g, &d), Err(Error::NotInSPrime));
        let a = gs.set_by_names(&["a"]);
        let h = perturb_zero_coefficients(&gs, &g, a, &rat(1, 5)).unwrap();
        assert!(in_s_prime(&gs, &h, &d));
        for p in 1..=4 {
            assert_eq!(phi_reconstructed(&gs, z, p, &h, &d).unwrap(), phi_direct(&gs, z, p, &h).unwrap());
        }
    }

    #[test]
    fn reconstruction_preconditions() {
        let gs = m1();
        let g = SimpleFn::constant(&gs, int(2));
        let z = gs.set_by_names(&["a"]);
        let coarse = Partition::single_block(gs.all_gens());
        assert_eq!(phi_reconstructed(&gs, z, 1, &g, &coarse), Err(Error::PartitionDoesNotSplit { z }));
        assert_eq!(phi_direct(&gs, z, 0, &g), Err(Error::ZeroPower));
        let d = d_singletons(&gs);
        assert_eq!(phi_reconstructed(&gs, z, 3, &g, &d).unwrap(), int(8));
    }

    #[test]
    fn norm_examples() {
        let gs = m1();
        let g = &SimpleFn::indicator(&gs, &gs.g_element(0)) - &SimpleFn::indicator(&gs, &gs.g_element(1));
        assert_eq!(norm_by_support(&gs, &g), int(1));
        assert_eq!(norm_by_support(&gs, &SimpleFn::constant(&gs, rat(-5, 2))), rat(5, 2));
        let at_empty = SimpleFn::indicator(&gs, &gs.aelem_of([GenSet::EMPTY])).scale(&int(-4));
        assert_eq!(norm_by_support(&gs, &at_empty), int(4));
        let seq = moment_norms(&gs, &g, 64);
        assert!(seq.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        assert!(seq[63] <= 1.0 + 1e-12 && seq[63] > 0.99);
        assert!((norm_by_moments(&gs, &SimpleFn::constant(&gs, rat(3, 4)), 8) - to_f64(&rat(3, 4))).abs() < 1e-12);
    }
}
