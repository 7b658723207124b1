use num::Zero;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonemeasure::rat::{abs, fmt_rat, int, pow, to_f64, zero};
use stonemeasure::{
    all_partitions, moment_norms, norm_by_support, phi_direct, phi_reconstructed, BlockFunctionals, Error,
    FunctionalContext, GenSet, GenSystem, Partition, Rat, SimpleFn,
};

use super::{expect_rat, fn_json, nonzero_rat, partition_json, random_fn, set_json, small_rat, support_per_block, Job};
use crate::oracle;
use crate::report::Recorder;

/// Partitions with at most `max_blocks` blocks; a seeded sample of `limit`
/// of them when there are more.
pub(super) fn partitions(gs: &GenSystem, max_blocks: usize, limit: usize, rng: &mut ChaCha8Rng) -> Vec<Partition> {
    let mut all: Vec<Partition> = all_partitions(gs.all_gens()).into_iter().filter(|d| d.len() <= max_blocks).collect();
    if all.len() > limit {
        all.shuffle(rng);
        all.truncate(limit);
    }
    all
}

const PARTITION_LIMIT: usize = 64;

/// Coefficients for every `r ⊆ s`, indexed by `s.local_index(r)`.
struct Coeffs {
    s: GenSet,
    y: Vec<Rat>,
}

impl Coeffs {
    fn draw(s: GenSet, rng: &mut ChaCha8Rng, nonzero: bool) -> Self {
        let y = s.subsets().iter().map(|_| if nonzero { nonzero_rat(rng) } else { small_rat(rng) }).collect();
        Self { s, y }
    }

    fn get(&self, r: GenSet) -> Rat {
        self.y[self.s.local_index(r)].clone()
    }

    fn function(&self, gs: &GenSystem) -> SimpleFn {
        oracle::j_form(gs, self.s, |r| self.get(r))
    }

    fn json(&self, gs: &GenSystem) -> serde_json::Value {
        json!({
            "s": set_json(gs, self.s),
            "y": self.s.subsets().into_iter().map(|r| json!([gs.fmt_set(r), fmt_rat(&self.get(r))])).collect::<Vec<_>>(),
        })
    }
}

pub fn lemma_3_6(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    for d in partitions(gs, 4, PARTITION_LIMIT, rng) {
        // (i), (ii): ν_C^k(J(r)) = [C = C_r]·λ(⋂r)^k, via the alternating sum
        for c in d.all_blocks().subsets() {
            let ctx = FunctionalContext::new(gs, &d, c);
            for r in all.subsets() {
                let c_r = d.blocks_meeting(r);
                let alt = oracle::alternating_sum(c_r.bits(), c.bits());
                let expected_alt = i64::from(c == c_r);
                rec.check(
                    alt == expected_alt,
                    || format!("alternating sum: {alt} for C_r={c_r:?}, C={c:?}"),
                    || job.replay(json!({})),
                );
                for k in 1..=2 {
                    let want = int(alt) * pow(&oracle::meet_measure(gs, r), k);
                    rec.check_result(
                        expect_rat(&ctx.nu_measure(k).measure(&gs.j_element(r)), &want),
                        "ν_C^k(J(r)) formula",
                        || {
                            job.replay(json!({
                                "D": partition_json(gs, &d), "C": c.bits(), "r": set_json(gs, r), "k": k,
                            }))
                        },
                    );
                }
            }
        }
        // (iii)-(v) on random g ∈ S_D
        for _ in 0..job.draws.max(1) {
            let coeffs = Coeffs::draw(support_per_block(&d, rng, false), rng, false);
            let g = coeffs.function(gs);
            let funcs = BlockFunctionals::new(gs, &d, &g);
            let replay = || job.replay(json!({ "D": partition_json(gs, &d), "g": coeffs.json(gs) }));
            let mut hit = vec![false; 1 << d.len()];
            for r in coeffs.s.subsets() {
                let c = d.blocks_meeting(r);
                hit[c.bits() as usize] = true;
                let lam = oracle::meet_measure(gs, r);
                let y = if lam.is_zero() { zero() } else { coeffs.get(r) };
                let outcome = (|| {
                    for k in 1..=2 {
                        expect_rat(funcs.nu(c, k), &(&y * pow(&lam, k))).map_err(|e| format!("ν^{k}: {e}"))?;
                    }
                    expect_rat(funcs.theta(c), &y).map_err(|e| format!("θ: {e}"))?;
                    let eta = if y.is_zero() { zero() } else { lam.clone() };
                    expect_rat(funcs.eta(c), &eta).map_err(|e| format!("η: {e}"))
                })();
                rec.check_result(outcome, "ν, θ, η read off a J-coefficient", replay);
            }
            for c in d.all_blocks().subsets().into_iter().filter(|c| !hit[c.bits() as usize]) {
                rec.check(
                    funcs.nu(c, 1).is_zero() && funcs.nu(c, 2).is_zero() && funcs.theta(c).is_zero(),
                    || format!("functionals vanish off the support: C={c:?}"),
                    replay,
                );
            }
        }
    }
}

pub fn eq_3_2(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    let parts = partitions(gs, 4, PARTITION_LIMIT, rng);
    let terms = oracle::minterms(gs);
    for z in all.subsets() {
        // every admissible D on the configured model; one per Z on the sweep
        let mut admissible: Vec<&Partition> = parts.iter().filter(|d| d.splits(z)).collect();
        if !job.primary {
            admissible = admissible.choose(rng).into_iter().copied().collect();
        }
        for d in admissible {
            let coeffs = Coeffs::draw(support_per_block(d, rng, false), rng, true);
            let g = coeffs.function(gs);
            let funcs = BlockFunctionals::new(gs, d, &g);
            let sets: Vec<u32> = d.blocks_inside(z).subsets().into_iter().map(|c| c.bits()).collect();
            for p in 1..=4 {
                let replay = || {
                    job.replay(
                        json!({ "Z": set_json(gs, z), "D": partition_json(gs, d), "p": p, "g": coeffs.json(gs) }),
                    )
                };
                let want = oracle::phi_on(gs, &terms, z, p, &g);
                let brute = oracle::lambda_brute(
                    &sets,
                    |c| funcs.theta(GenSet(c)).clone(),
                    |c| funcs.eta(GenSet(c)).clone(),
                    p,
                );
                let outcome = (|| {
                    let direct = phi_direct(gs, z, p, &g).map_err(|e| e.to_string())?;
                    expect_rat(&direct, &want).map_err(|e| format!("direct: {e}"))?;
                    let rebuilt = phi_reconstructed(gs, z, p, &g, d).map_err(|e| e.to_string())?;
                    expect_rat(&rebuilt, &want).map_err(|e| format!("reconstructed: {e}"))?;
                    expect_rat(&brute, &want).map_err(|e| format!("enumerated sum: {e}"))
                })();
                rec.check_result(outcome, "φ_{Z,p} = Σ_β", replay);
            }
        }
        // a partition that does not split Z is refused
        if !z.is_empty() && z != all {
            let whole = Partition::single_block(all);
            let g = random_fn(gs, rng);
            rec.check(
                matches!(phi_reconstructed(gs, z, 1, &g, &whole), Err(Error::PartitionDoesNotSplit { .. })),
                || "non-splitting partition is rejected".into(),
                || job.replay(json!({ "Z": set_json(gs, z) })),
            );
        }
    }
}

/// All functions with values in {-1, 0, 1} up to this many atoms.
const EXHAUSTIVE_ATOMS: usize = 3;

fn check_norm(job: &Job, g: &SimpleFn, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    let replay = || job.replay(json!({ "g": fn_json(gs, g) }));
    let sup = oracle::sup_abs(g.values());
    // max over Z of |g| on the support of μ_Z, from the closed form
    let terms = oracle::minterms(gs);
    let mut by_support = zero();
    let mut lower_terms: Vec<(f64, f64)> = Vec::new();
    for z in all.subsets() {
        for r in &terms {
            let w = oracle::mu_z_weight(gs, z, *r);
            if !w.is_zero() {
                let v = abs(g.value(gs.atom_index(*r).expect("minterm")));
                lower_terms.push((to_f64(&v), to_f64(&w)));
                by_support = by_support.max(v);
            }
        }
    }
    rec.check_result(expect_rat(&by_support, &sup), "support formula equals the sup norm", replay);
    rec.check_result(expect_rat(&norm_by_support(gs, g), &sup), "norm_by_support equals the sup norm", replay);

    let p_max = job.caps.p_max.max(1);
    let seq = moment_norms(gs, g, p_max);
    let sup_f = to_f64(&sup);
    const REL: f64 = 1e-12;
    let monotone = seq.windows(2).all(|w| w[0] <= w[1] * (1.0 + REL));
    rec.check(monotone, || format!("moment norms are non-decreasing: {seq:?}"), replay);
    for (i, value) in seq.iter().enumerate() {
        let p = (i + 1) as f64;
        let lower = lower_terms.iter().map(|(v, w)| v * w.powf(1.0 / (2.0 * p))).fold(0.0, f64::max);
        rec.check(
            *value >= lower * (1.0 - REL) && *value <= sup_f * (1.0 + REL),
            || format!("bracket at p={}: {lower} <= {value} <= {sup_f}", i + 1),
            replay,
        );
    }
    let last = *seq.last().expect("p_max >= 1");
    let gap = (last - sup_f).abs();
    rec.observe_max(&format!("max |moment norm at p={p_max} - ‖g‖|"), gap);
    if sup_f > 0.0 {
        rec.observe_max(&format!("max relative gap at p={p_max}"), gap / sup_f);
    }
}

pub fn thm_3_9(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    for _ in 0..job.draws {
        check_norm(job, &random_fn(gs, rng), rec);
    }
    let k = gs.atom_count();
    if k <= EXHAUSTIVE_ATOMS {
        for code in 0..3usize.pow(k as u32) {
            let values = (0..k).map(|i| int((code / 3usize.pow(i as u32) % 3) as i64 - 1)).collect();
            check_norm(job, &SimpleFn::new(gs, values).expect("sized"), rec);
        }
    }
}
