//! Brute-force reference computations. These work from the raw generator
//! events and an independent implementation of the index rule, touching the
//! library only for its inputs (events, atom order, function tables).

use num::{BigInt, Integer, One, Signed, Zero};
use stonemeasure::rat::{one, pow, zero};
use stonemeasure::{Event, GenSet, GenSystem, Partition, Rat, SimpleFn};

/// Generators active at index `n`: generator `i` owns bit `m-1-i`.
pub fn active(m: usize, n: usize) -> GenSet {
    let mut s = GenSet::EMPTY;
    for i in 0..m {
        if (n >> (m - 1 - i)) & 1 == 1 {
            s = s.with(i);
        }
    }
    s
}

/// Entry `n` of the sequence element `G_b`.
pub fn g_entry(gs: &GenSystem, i: usize, n: usize) -> Event {
    if active(gs.m(), n).contains(i) {
        gs.gen(i).clone()
    } else {
        gs.space().empty_event()
    }
}

/// Entry `n` of `⋂_{s} G_b ∖ ⋃_{t} G_b`, computed entrywise.
pub fn w_entry(gs: &GenSystem, s: GenSet, t: GenSet, n: usize) -> Event {
    let mut e = gs.space().full_event();
    for i in s.iter() {
        e = e.intersection(&g_entry(gs, i, n));
    }
    for i in t.iter() {
        e = e.difference(&g_entry(gs, i, n));
    }
    e
}

pub fn w_entries(gs: &GenSystem, s: GenSet, t: GenSet) -> Vec<Event> {
    (0..1usize << gs.m()).map(|n| w_entry(gs, s, t, n)).collect()
}

pub fn w_is_zero(gs: &GenSystem, s: GenSet, t: GenSet) -> bool {
    (0..1usize << gs.m()).all(|n| w_entry(gs, s, t, n).is_empty())
}

/// Subsets `r` whose minterm `W(r, G∖r)` is nonzero, ascending by bitmask.
pub fn minterms(gs: &GenSystem) -> Vec<GenSet> {
    let all = GenSet::full(gs.m());
    (0u32..1 << gs.m()).map(GenSet).filter(|r| !w_is_zero(gs, *r, all - *r)).collect()
}

/// Number of ultrafilters of the algebra of all subsets of `k` minterms,
/// found by testing every principal filter `↑a` for primeness: an element
/// is in `↑a` iff it contains `a`, and a prime filter holds exactly one of
/// `x`, `¬x` for every `x`.
pub fn ultrafilter_count(k: usize) -> usize {
    assert!(k <= 20, "algebra too large for brute force");
    let full: u64 = (1u64 << k) - 1;
    (1..=full).filter(|a| (0..=full).all(|x| ((x & a) == *a) != (((full & !x) & a) == *a))).count()
}

/// `λ(⋂_r b)`.
pub fn meet_measure(gs: &GenSystem, r: GenSet) -> Rat {
    let mut e = gs.space().full_event();
    for i in r.iter() {
        e = e.intersection(gs.gen(i));
    }
    gs.space().measure(&e)
}

/// `λ(⋂_r b ∖ ⋃_t b)`.
pub fn cell_measure(gs: &GenSystem, r: GenSet, t: GenSet) -> Rat {
    let mut e = gs.space().full_event();
    for i in r.iter() {
        e = e.intersection(gs.gen(i));
    }
    for i in t.iter() {
        e = e.difference(gs.gen(i));
    }
    gs.space().measure(&e)
}

fn value_at(gs: &GenSystem, g: &SimpleFn, r: GenSet) -> Rat {
    g.value(gs.atom_index(r).expect("FIP set")).clone()
}

/// `∫ h dμ_n`, with `μ_n(c) = λ(c(n))` applied minterm by minterm.
pub fn mu_n_integral(gs: &GenSystem, h: &SimpleFn, n: usize) -> Rat {
    let all = GenSet::full(gs.m());
    minterms(gs).into_iter().map(|r| value_at(gs, h, r) * gs.space().measure(&w_entry(gs, r, all - r, n))).sum()
}

/// `μ_Z` weight of minterm `r` from the closed form.
pub fn mu_z_weight(gs: &GenSystem, z: GenSet, r: GenSet) -> Rat {
    if r.is_subset(z) {
        cell_measure(gs, r, z - r)
    } else {
        zero()
    }
}

/// `∫ g^p dμ_Z` from the closed form of `μ_Z`.
pub fn phi(gs: &GenSystem, z: GenSet, p: u32, g: &SimpleFn) -> Rat {
    phi_on(gs, &minterms(gs), z, p, g)
}

/// [`phi`] over precomputed minterms.
pub fn phi_on(gs: &GenSystem, terms: &[GenSet], z: GenSet, p: u32, g: &SimpleFn) -> Rat {
    terms.iter().map(|r| pow(&value_at(gs, g, *r), p) * mu_z_weight(gs, z, *r)).sum()
}

/// Every pair of minterms agreeing on `s` takes the same value.
pub fn factors(gs: &GenSystem, g: &SimpleFn, s: GenSet) -> bool {
    factors_on(gs, &minterms(gs), g, s)
}

fn factors_on(gs: &GenSystem, ms: &[GenSet], g: &SimpleFn, s: GenSet) -> bool {
    ms.iter().all(|x| ms.iter().all(|y| (*x & s) != (*y & s) || value_at(gs, g, *x) == value_at(gs, g, *y)))
}

/// Intersection of all supports `g` factors through.
pub fn minimal_support(gs: &GenSystem, g: &SimpleFn) -> GenSet {
    let all = GenSet::full(gs.m());
    let ms = minterms(gs);
    (0u32..1 << gs.m()).map(GenSet).filter(|s| factors_on(gs, &ms, g, *s)).fold(all, |acc, s| acc & s)
}

/// The literal irreducibility condition for the W-representation of `g` on
/// `s`: no `s' ⊊ s` such that `z_r = z_{r'}` for all FIP `r, r' ⊆ s` with
/// `r ∩ s' = r' ∩ s'`.
pub fn irreducible(gs: &GenSystem, g: &SimpleFn, s: GenSet) -> bool {
    irreducible_on(gs, &minterms(gs), g, s)
}

fn irreducible_on(gs: &GenSystem, ms: &[GenSet], g: &SimpleFn, s: GenSet) -> bool {
    let fip: Vec<GenSet> = ms.iter().copied().filter(|r| r.is_subset(s)).collect();
    let collapsible = |sp: GenSet| {
        fip.iter().all(|r| fip.iter().all(|rp| (*r & sp) != (*rp & sp) || value_at(gs, g, *r) == value_at(gs, g, *rp)))
    };
    (0u32..1 << gs.m()).map(GenSet).filter(|sp| sp.is_subset(s) && *sp != s).all(|sp| !collapsible(sp))
}

/// `g ∈ A_D` by exhaustive search over supports with exactly one generator
/// per block.
pub fn in_ad(gs: &GenSystem, g: &SimpleFn, d: &Partition) -> bool {
    if d.is_empty() {
        return false;
    }
    let ms = minterms(gs);
    (0u32..1 << gs.m())
        .map(GenSet)
        .filter(|s| d.blocks().iter().all(|b| (*b & *s).len() == 1))
        .any(|s| factors_on(gs, &ms, g, s) && irreducible_on(gs, &ms, g, s))
}

/// The function `Σ_{r ⊆ s} y_r 1_{Ĵ(r)}`, evaluated minterm by minterm.
pub fn j_form(gs: &GenSystem, s: GenSet, y: impl Fn(GenSet) -> Rat) -> SimpleFn {
    SimpleFn::from_atoms(gs, |x| {
        (0u32..1 << gs.m()).map(GenSet).filter(|r| r.is_subset(s) && r.is_subset(x)).map(&y).sum()
    })
}

/// The function `Σ_{r ⊆ s} z_r 1_{Ŵ(r, s∖r)}`.
pub fn w_form(gs: &GenSystem, s: GenSet, z: impl Fn(GenSet) -> Rat) -> SimpleFn {
    SimpleFn::from_atoms(gs, |x| z(x & s))
}

/// Exhaustive scan over nonempty atom sets (ascending bitmask) for the first
/// one every measure gives mass at most 1/2, using integer arithmetic over a
/// common denominator.
pub fn deficiency_scan(weights: &[Vec<Rat>]) -> Option<u64> {
    let k = weights.first()?.len();
    assert!(k <= 24, "too many atoms for an exhaustive scan");
    let denom = weights.iter().flatten().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<Vec<i128>> = weights
        .iter()
        .map(|ws| {
            ws.iter()
                .map(|w| {
                    let v = w.numer() * (&denom / w.denom());
                    i128::try_from(v).expect("weights fit in i128")
                })
                .collect()
        })
        .collect();
    let half = i128::try_from(denom).expect("denominator fits in i128");
    // subset sums grow one mask at a time; `rest < mask` is always present
    let mut sums: Vec<Vec<i128>> = scaled.iter().map(|_| vec![0i128]).collect();
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut witness = true;
        for (sum, ws) in sums.iter_mut().zip(&scaled) {
            let v = sum[rest] + ws[low];
            sum.push(v);
            // mass <= 1/2  <=>  2 * scaled <= denom
            if 2 * v > half {
                witness = false;
            }
        }
        if witness {
            return Some(mask as u64);
        }
    }
    None
}

/// Σ over compositions β of `p` indexed by the given sets of blocks, by
/// explicit enumeration: `p!/Πβ! · Π θ^β · η_{C(β)}`. Sets with `θ = 0`
/// contribute only through `β_C = 0` and are left out of the enumeration.
pub fn lambda_brute(sets: &[u32], theta: impl Fn(u32) -> Rat, eta: impl Fn(u32) -> Rat, p: u32) -> Rat {
    let fact: Vec<Rat> = (0..=p).map(|n| Rat::from_integer((1..=n).map(BigInt::from).product::<BigInt>())).collect();
    // (set, θ^b / b! for b = 0..=p)
    let terms: Vec<(u32, Vec<Rat>)> = sets
        .iter()
        .map(|c| (*c, theta(*c)))
        .filter(|(_, t)| !t.is_zero())
        .map(|(c, t)| (c, (0..=p).map(|b| pow(&t, b) / &fact[b as usize]).collect()))
        .collect();
    fn rec(idx: usize, left: u32, terms: &[(u32, Vec<Rat>)], coef: Rat, union: u32, out: &mut Vec<(u32, Rat)>) {
        if idx == terms.len() {
            if left == 0 {
                out.push((union, coef));
            }
            return;
        }
        let (c, powers) = &terms[idx];
        for b in 0..=left {
            let u = if b > 0 { union | c } else { union };
            rec(idx + 1, left - b, terms, &coef * &powers[b as usize], u, out);
        }
    }
    let mut out = Vec::new();
    rec(0, p, &terms, one(), 0, &mut out);
    out.into_iter().map(|(union, coef)| coef * eta(union)).sum::<Rat>() * &fact[p as usize]
}

/// `Σ_{C_r ⊆ B ⊆ C} (-1)^{|C∖B|}` over bitmasks.
pub fn alternating_sum(c_r: u32, c: u32) -> i64 {
    (0..=c)
        .filter(|b| b & c == *b && b & c_r == c_r)
        .map(|b| if (c & !b).count_ones().is_multiple_of(2) { 1 } else { -1 })
        .sum()
}

pub fn sup_abs(values: &[Rat]) -> Rat {
    values.iter().map(Signed::abs).max().unwrap_or_else(zero)
}

pub fn is_probability(weights: &[Rat]) -> bool {
    weights.iter().all(|w| !w.is_negative()) && weights.iter().sum::<Rat>() == one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ultrafilters_are_atoms() {
        for k in 1..=8 {
            assert_eq!(ultrafilter_count(k), k);
        }
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(alternating_sum(0b01, 0b01), 1);
        assert_eq!(alternating_sum(0b01, 0b11), 0);
        assert_eq!(alternating_sum(0, 0b111), 0);
    }

    #[test]
    fn scan_finds_lowest_singleton() {
        let half = Rat::new(1.into(), 2.into());
        let q = Rat::new(1.into(), 4.into());
        let ws = vec![vec![Rat::one(), zero(), zero()], vec![half.clone(), q.clone(), q]];
        assert_eq!(deficiency_scan(&ws), Some(0b010));
        assert_eq!(deficiency_scan(&[vec![Rat::one()]]), None);
    }
}
