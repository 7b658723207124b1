use num::Zero;
use rand::seq::IteratorRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonemeasure::rat::int;
use stonemeasure::{
    decompose_sk, in_ad, in_ad_criterion, is_irreducible, l_dp, minimal_support, n_dp, norm_on_ad, simplify, to_jrep,
    AdRecovery, Decomposition, Error, GenSet, GenSystem, IntegralTable, Partition, Rat, SimpleFn,
};

use super::functionals::partitions;
use super::{
    expect_eq, expect_rat, fn_json, nonzero_rat, partition_json, random_fn, set_json, small_rat, support_per_block, Job,
};
use crate::oracle;
use crate::report::Recorder;

const PARTITION_LIMIT: usize = 32;
const AD_RETRIES: usize = 8;

/// A W-form function on a support with one generator per block; `None` if
/// every attempt collapsed to a smaller support.
fn draw_ad(gs: &GenSystem, d: &Partition, rng: &mut ChaCha8Rng) -> Option<(GenSet, SimpleFn)> {
    (0..AD_RETRIES).find_map(|_| {
        let s = support_per_block(d, rng, true);
        let z: Vec<Rat> = s.subsets().iter().map(|_| small_rat(rng)).collect();
        let g = oracle::w_form(gs, s, |r| z[s.local_index(r)].clone());
        oracle::in_ad(gs, &g, d).then_some((s, g))
    })
}

pub fn lemma_3_10(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    let mut fns: Vec<SimpleFn> = (0..job.draws).map(|_| random_fn(gs, rng)).collect();
    fns.push(SimpleFn::constant(gs, nonzero_rat(rng)));
    for g in &fns {
        let replay = || job.replay(json!({ "g": fn_json(gs, g) }));
        let s_min = oracle::minimal_support(gs, g);
        let extra = GenSet(rng.gen::<u32>()) & all;
        let s_big = s_min | extra;
        let outcome = (|| {
            expect_eq(minimal_support(gs, g), s_min).map_err(|e| format!("minimal support: {e}"))?;
            let j = to_jrep(gs, g, s_big).map_err(|e| e.to_string())?;
            let rebuilt = oracle::j_form(gs, s_big, |r| j.coeff(r).clone());
            expect_eq(&rebuilt, g).map_err(|e| format!("J-form: {e}"))?;
            if let Some(r) = s_big.subsets().into_iter().find(|r| !gs.is_fip(*r) && !j.coeff(*r).is_zero()) {
                return Err(format!("nonzero coefficient on non-FIP {r:?}"));
            }
            let w = j.to_wrep();
            expect_eq(&w.realize(gs), g).map_err(|e| format!("W-form: {e}"))?;
            expect_eq(&w.to_jrep(), &j).map_err(|e| format!("round trip: {e}"))?;
            let simple = simplify(gs, &w);
            expect_eq(simple.support(), s_min).map_err(|e| format!("simplified support: {e}"))?;
            expect_eq(&oracle::w_form(gs, simple.support(), |r| simple.value(r).clone()), g)
                .map_err(|e| format!("simplified form: {e}"))?;
            if !oracle::irreducible(gs, g, s_min) || !is_irreducible(gs, &simple) {
                return Err("simplified form is reducible".into());
            }
            Ok(())
        })();
        rec.check_result(outcome, "representations and simplification", replay);

        if let Some(drop) = s_min.iter().choose(rng) {
            let small = s_min.without(drop);
            let outcome = match to_jrep(gs, g, small) {
                Err(Error::SupportTooSmall { first, second, .. }) => {
                    let value = |r: GenSet| gs.atom_index(r).map(|i| g.value(i).clone());
                    if (first & small) == (second & small) && value(first).is_some() && value(first) != value(second) {
                        Ok(())
                    } else {
                        Err(format!("bogus witness pair {first:?}, {second:?}"))
                    }
                }
                other => Err(format!("expected SupportTooSmall, got {other:?}")),
            };
            rec.check_result(outcome, "too-small support is refused with a witness", || {
                job.replay(json!({ "g": fn_json(gs, g), "s": set_json(gs, small) }))
            });
        }
    }
}

pub fn lemma_3_13(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    for d in partitions(gs, 3, PARTITION_LIMIT, rng) {
        for i in 0..job.draws.max(1) {
            let g = if i % 2 == 0 {
                random_fn(gs, rng)
            } else {
                match draw_ad(gs, &d, rng) {
                    Some((_, g)) => g,
                    None => random_fn(gs, rng),
                }
            };
            let replay = || job.replay(json!({ "D": partition_json(gs, &d), "g": fn_json(gs, &g) }));
            let want = oracle::in_ad(gs, &g, &d);
            let table = IntegralTable::new(gs, &g);
            let outcome = (|| {
                expect_eq(in_ad(gs, &g, &d), want).map_err(|e| format!("in_ad: {e}"))?;
                expect_eq(in_ad_criterion(gs, &g, &d), want).map_err(|e| format!("criterion: {e}"))?;
                if want {
                    // every block is active in some T
                    for (i, block) in d.blocks().iter().enumerate() {
                        if table.is_inert(*block) || table.activity_witness(*block).is_none() {
                            return Err(format!("block #{i} is inert"));
                        }
                    }
                }
                // μ_T(g) only sees T ∩ s
                let s = oracle::minimal_support(gs, &g);
                for t in all.subsets() {
                    expect_rat(table.get(t), table.get(t & s)).map_err(|e| format!("T = {t:?}: {e}"))?;
                }
                Ok(())
            })();
            rec.check_result(outcome, "A_D membership three ways", replay);
        }
    }
}

pub fn lemma_3_15(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    for d in partitions(gs, 4, PARTITION_LIMIT, rng) {
        for _ in 0..job.draws.max(1) {
            let Some((s, g)) = draw_ad(gs, &d, rng) else { continue };
            let replay = || job.replay(json!({ "D": partition_json(gs, &d), "g": fn_json(gs, &g) }));
            // an affine image of g has the same support and the same ψ
            let (a, c) = (nonzero_rat(rng), small_rat(rng));
            let image = SimpleFn::from_atoms(gs, |x| &a * g.value(gs.atom_index(x).expect("atom")) + &c);
            let outcome = (|| {
                let rec_g = AdRecovery::new(gs, &g, &d).map_err(|e| e.to_string())?;
                let rec_image = AdRecovery::new(gs, &image, &d).map_err(|e| format!("affine image: {e}"))?;
                for (i, block) in d.blocks().iter().enumerate() {
                    let b = (s & *block).iter().next().expect("one generator per block");
                    for t in all.subsets() {
                        let union = rec_g.table().absorbs_union(*block, t);
                        let diff = rec_g.table().absorbs_difference(*block, t);
                        if union == diff {
                            return Err(format!("block #{i}, T = {t:?}: (ii) = (ii') = {union}"));
                        }
                        expect_eq(union, t.contains(b)).map_err(|e| format!("block #{i}, T = {t:?}: {e}"))?;
                        expect_eq(rec_g.psi(i, t), Ok(t.contains(b)))?;
                        expect_eq(rec_image.psi(i, t), Ok(t.contains(b))).map_err(|e| format!("affine image: {e}"))?;
                    }
                    expect_eq(rec_g.block_generator(i), Ok(b))?;
                }
                Ok(())
            })();
            rec.check_result(outcome, "ψ decides b_i ∈ T", replay);
        }
    }
}

pub fn lemma_3_17(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    for d in partitions(gs, 4, PARTITION_LIMIT, rng) {
        for _ in 0..job.draws.max(1) {
            let Some((s, g)) = draw_ad(gs, &d, rng) else { continue };
            let replay = || job.replay(json!({ "D": partition_json(gs, &d), "g": fn_json(gs, &g) }));
            let outcome = (|| {
                let recovery = AdRecovery::new(gs, &g, &d).map_err(|e| e.to_string())?;
                for p in d.all_blocks().subsets() {
                    let r = s & d.union_of(p);
                    let want = oracle::meet_measure(gs, r);
                    let got = recovery.l_dp(gs, p).map_err(|e| e.to_string())?;
                    expect_rat(&got, &want).map_err(|e| format!("L_(D,P) for P = {p:?}: {e}"))?;
                    expect_eq(recovery.n_dp(gs, p), Ok(!want.is_zero()))?;
                }
                let every = d.all_blocks();
                expect_eq(l_dp(gs, &g, &d, every), recovery.l_dp(gs, every))?;
                expect_eq(n_dp(gs, &g, &d, every), recovery.n_dp(gs, every))?;
                let sup = oracle::sup_abs(g.values());
                let norm = norm_on_ad(gs, &g, &d).map_err(|e| e.to_string())?;
                expect_rat(&norm, &sup).map_err(|e| format!("norm: {e}"))?;
                let doubled = norm_on_ad(gs, &g.scale(&int(2)), &d).map_err(|e| e.to_string())?;
                expect_rat(&doubled, &(sup * int(2))).map_err(|e| format!("norm of 2g: {e}"))
            })();
            rec.check_result(outcome, "norm on A_D from θ and L", replay);
        }
    }
}

pub fn thm_3_18(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let parts = partitions(gs, usize::MAX, usize::MAX, rng);
    let mut fns: Vec<SimpleFn> = (0..job.draws).map(|_| random_fn(gs, rng)).collect();
    fns.push(SimpleFn::constant(gs, small_rat(rng)));
    for g in &fns {
        let replay = || job.replay(json!({ "g": fn_json(gs, g) }));
        let outcome = match decompose_sk(gs, g) {
            Err(e) => Err(e.to_string()),
            Ok(Decomposition::Constant(c)) => {
                if g.values().iter().any(|v| *v != c) {
                    Err("not constant".into())
                } else if let Some(d) = parts.iter().find(|d| oracle::in_ad(gs, g, d)) {
                    Err(format!("constant lies in A_D for D = {d:?}"))
                } else {
                    Ok(())
                }
            }
            Ok(Decomposition::Partitioned(d)) => {
                if !oracle::in_ad(gs, g, &d) {
                    Err(format!("g is not in A_D for D = {}", partition_json(gs, &d)))
                } else if let Some(c) = parts.iter().find(|c| c.len() < d.len() && oracle::in_ad(gs, g, c)) {
                    Err(format!("coarser partition {} also works", partition_json(gs, c)))
                } else {
                    Ok(())
                }
            }
        };
        rec.check_result(outcome, "S(K) = ⋃ A_D", replay);
    }
}
