use num::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonemeasure::rat::{abs, fmt_rat, int, pow, rat, zero};
use stonemeasure::{
    extend_measure, mn_deficiency_witness, mu_n, mu_tk, mu_tk_capped, separation_witness, AElem, BitSet, Error,
    ExtensionStrategy, GenSet, GenSystem, MeasureA, Rat, SimpleFn, SubalgebraMeasure,
};

use super::{expect_eq, expect_rat, fn_json, random_fn, set_json, Job};
use crate::oracle;
use crate::report::Recorder;

/// A probability measure with small integer weights, some of them zero.
fn random_probability(gs: &GenSystem, rng: &mut ChaCha8Rng) -> MeasureA {
    loop {
        let raw: Vec<i64> = (0..gs.atom_count()).map(|_| rng.gen_range(0..=3)).collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            let weights = raw.iter().map(|w| rat(*w, total)).collect();
            return MeasureA::probability(gs, weights).expect("normalized");
        }
    }
}

fn weights_json(mu: &MeasureA) -> serde_json::Value {
    json!(mu.weights().iter().map(fmt_rat).collect::<Vec<_>>())
}

pub fn fact_2_4(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let mut families: Vec<(String, Vec<MeasureA>)> = vec![
        ("mu_n".into(), (0..gs.index_len()).map(|n| mu_n(gs, n).expect("in range")).collect()),
        ("mu_T".into(), (0u32..1 << gs.m()).map(|t| gs.mu_t(GenSet(t), 1).clone()).collect()),
        ("point masses".into(), (0..gs.atom_count()).map(|i| MeasureA::point_mass(gs, i)).collect()),
        ("uniform".into(), vec![MeasureA::uniform(gs)]),
    ];
    for d in 0..job.draws {
        let size = rng.gen_range(1..=3);
        families.push((format!("random #{d}"), (0..size).map(|_| random_probability(gs, rng)).collect()));
    }
    for (label, family) in &families {
        let weights: Vec<Vec<Rat>> = family.iter().map(|mu| mu.weights().to_vec()).collect();
        let want = oracle::deficiency_scan(&weights);
        let got = mn_deficiency_witness(gs, family).map(|w| w.map(|a| a.bits().as_u64()));
        rec.check_result(
            match got {
                Ok(g) => expect_eq(g, want),
                Err(e) => Err(e.to_string()),
            },
            "first deficiency witness matches exhaustive scan",
            || job.replay(json!({ "family": label, "weights": family.iter().map(weights_json).collect::<Vec<_>>() })),
        );
    }
    rec.check(
        mn_deficiency_witness(gs, &[]) == Err(Error::EmptyMeasureFamily),
        || "empty family is rejected".into(),
        || job.replay(json!({})),
    );
    let signed = MeasureA::signed(vec![int(1); gs.atom_count()]);
    rec.check(
        matches!(
            mn_deficiency_witness(gs, &[MeasureA::uniform(gs), signed]),
            Err(Error::SignedMeasureInFamily { index: 1 })
        ),
        || "signed member is rejected".into(),
        || job.replay(json!({})),
    );
}

/// Cells from a random labelling of the atoms into at most four classes.
fn random_cells(gs: &GenSystem, rng: &mut ChaCha8Rng) -> Vec<AElem> {
    let k = gs.atom_count();
    let classes = rng.gen_range(1..=k.min(4));
    let labels: Vec<usize> = (0..k).map(|_| rng.gen_range(0..classes)).collect();
    (0..classes)
        .map(|c| {
            let bits = (0..k).filter(|i| labels[*i] == c).fold(0u64, |acc, i| acc | 1 << i);
            AElem::from_bits(BitSet::from_u64(k, bits))
        })
        .filter(|cell| !cell.is_empty())
        .collect()
}

pub fn lemma_2_5(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    for _ in 0..job.draws {
        let cells = random_cells(gs, rng);
        let raw: Vec<i64> = loop {
            let raw: Vec<i64> = cells.iter().map(|_| rng.gen_range(0..=3)).collect();
            if raw.iter().sum::<i64>() > 0 {
                break raw;
            }
        };
        let total: i64 = raw.iter().sum();
        let nu = SubalgebraMeasure { cells: cells.clone(), masses: raw.iter().map(|w| rat(*w, total)).collect() };
        let reference = rng.gen_bool(0.5).then(|| random_probability(gs, rng));
        let strategy = match &reference {
            Some(r) => ExtensionStrategy::Proportional(r.clone()),
            None => ExtensionStrategy::Uniform,
        };
        let replay = || {
            job.replay(json!({
                "cells": cells.iter().map(|c| c.bits().as_u64()).collect::<Vec<_>>(),
                "masses": nu.masses.iter().map(fmt_rat).collect::<Vec<_>>(),
                "reference": reference.as_ref().map(weights_json),
            }))
        };
        let outcome = extend_measure(gs, &nu, &strategy).map_err(|e| e.to_string()).and_then(|mu| {
            if !oracle::is_probability(mu.weights()) {
                return Err(format!("extension is not a probability measure: {}", weights_json(&mu)));
            }
            for (cell, mass) in cells.iter().zip(&nu.masses) {
                let got: Rat = cell.atom_indices().map(|i| mu.weight(i).clone()).sum();
                expect_rat(&got, mass)?;
                if let Some(r) = &reference {
                    let charged: Rat = cell.atom_indices().map(|i| r.weight(i).clone()).sum();
                    if !charged.is_zero() {
                        for i in cell.atom_indices() {
                            expect_rat(&(mu.weight(i) * &charged), &(mass * r.weight(i)))?;
                        }
                    }
                }
            }
            Ok(())
        });
        rec.check_result(outcome, "extension is a probability measure restricting to ν", replay);
    }

    // the generated subalgebra {0, G_b, ¬G_b, 1} with λ-masses
    for i in 0..gs.m() {
        let g = gs.g_element(i);
        let lam = gs.space().measure(gs.gen(i));
        let mut cells = vec![g.clone()];
        let mut masses = vec![lam.clone()];
        if g.complement().is_empty() {
            masses[0] = int(1);
        } else {
            cells.push(g.complement());
            masses.push(int(1) - &lam);
        }
        let nu = SubalgebraMeasure { cells, masses };
        let outcome = extend_measure(gs, &nu, &ExtensionStrategy::Uniform)
            .map_err(|e| e.to_string())
            .and_then(|mu| expect_eq(nu.restrict(&mu), nu.masses.clone()).map(|_| mu))
            .and_then(|mu| if oracle::is_probability(mu.weights()) { Ok(()) } else { Err("not a probability".into()) });
        rec.check_result(outcome, "extension from {G_b, ¬G_b}", || job.replay(json!({ "generator": gs.name(i) })));
    }

    let top = gs.top();
    let bad_mass = SubalgebraMeasure { cells: vec![top.clone()], masses: vec![rat(1, 2)] };
    rec.check(
        matches!(extend_measure(gs, &bad_mass, &ExtensionStrategy::Uniform), Err(Error::CellMassNotNormalized { .. })),
        || "unnormalized masses are rejected".into(),
        || job.replay(json!({})),
    );
    let overlap = SubalgebraMeasure { cells: vec![top.clone(), top], masses: vec![rat(1, 2), rat(1, 2)] };
    rec.check(
        matches!(extend_measure(gs, &overlap, &ExtensionStrategy::Uniform), Err(Error::CellsNotPartition(_))),
        || "overlapping cells are rejected".into(),
        || job.replay(json!({})),
    );
}

fn nonzero_fn(gs: &GenSystem, rng: &mut ChaCha8Rng) -> SimpleFn {
    loop {
        let h = random_fn(gs, rng);
        if !h.is_zero() {
            return h;
        }
    }
}

/// Checks the witness against the raw minterms.
fn check_witness(gs: &GenSystem, h: &SimpleFn) -> Result<(), String> {
    let w = separation_witness(gs, h).map_err(|e| e.to_string())?;
    let m = gs.m();
    let terms = oracle::minterms(gs);
    let value = |r: GenSet| h.value(gs.atom_index(r).expect("minterm")).clone();
    let on_w = |s: GenSet, t: GenSet| terms.iter().copied().filter(move |x| s.is_subset(*x) && x.is_disjoint(t));

    // the chosen s is a nonzero minterm of least cardinality
    if !terms.contains(&w.s) || value(w.s).is_zero() {
        return Err(format!("h vanishes at F_s for s = {:?}", w.s));
    }
    if let Some(r) = terms.iter().find(|r| r.len() < w.s.len() && !value(**r).is_zero()) {
        return Err(format!("smaller nonzero set {r:?} than s = {:?}", w.s));
    }
    let hs = value(w.s);
    expect_rat(&w.c, &abs(&hs))?;
    expect_eq(w.negated, hs.is_negative())?;
    let sign = if w.negated { int(-1) } else { int(1) };

    // Step 1
    if !w.t.is_disjoint(w.s) {
        return Err("t meets s".into());
    }
    let half = &w.c / int(2);
    if let Some(x) = on_w(w.s, w.t).find(|x| &sign * value(*x) < half) {
        return Err(format!("step 1: h' < C/2 at {x:?}"));
    }
    // Step 2
    let delta = &w.c / int(4) * oracle::meet_measure(gs, w.s);
    expect_rat(&w.delta, &delta)?;
    let mut rs: Vec<GenSet> = w.t_r.iter().map(|(r, _)| *r).collect();
    rs.sort();
    let mut want: Vec<GenSet> = (0u32..1 << m).map(GenSet).filter(|r| r.is_subset(w.s) && *r != w.s).collect();
    want.sort();
    expect_eq(rs, want)?;
    let mut t_star = w.t;
    for (r, t_r) in &w.t_r {
        if !t_r.is_disjoint(w.s) {
            return Err(format!("t_r meets s for r = {r:?}"));
        }
        if let Some(x) = on_w(*r, *t_r | (w.s - *r)).find(|x| abs(&value(*x)) > delta) {
            return Err(format!("step 2: |h| > δ at {x:?} for r = {r:?}"));
        }
        t_star = t_star | *t_r;
    }
    expect_eq(w.t_star, t_star)?;
    // Step 3
    let active = oracle::active(m, w.n);
    if !w.s.is_subset(active) || !active.is_disjoint(t_star) {
        return Err(format!("step 3: index {} has active set {active:?}", w.n));
    }
    // Step 4
    expect_rat(&w.value, &oracle::mu_n_integral(gs, h, w.n))?;
    if !(delta > zero() && abs(&w.value) >= delta) {
        return Err(format!("step 4: |μ_n(h)| = {} < δ = {}", fmt_rat(&w.value), fmt_rat(&delta)));
    }
    Ok(())
}

pub fn thm_2_1(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    for _ in 0..job.draws {
        let h = nonzero_fn(gs, rng);
        rec.check_result(check_witness(gs, &h), "separation witness", || job.replay(json!({ "h": fn_json(gs, &h) })));
    }
    // every atom indicator is separated too
    for i in 0..gs.atom_count() {
        let h = SimpleFn::indicator(gs, &gs.aelem_of([gs.atom(i).set()]));
        rec.check_result(check_witness(gs, &h), "separation witness for an atom", || {
            job.replay(json!({ "h": fn_json(gs, &h) }))
        });
    }
    rec.check(
        separation_witness(gs, &SimpleFn::zero(gs)) == Err(Error::ZeroFunction),
        || "zero function is rejected".into(),
        || job.replay(json!({})),
    );
}

pub fn remark_3_1(job: &Job, _rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let m = gs.m();
    for b in 0..m {
        let lam = oracle::meet_measure(gs, GenSet::singleton(b));
        let f = SimpleFn::indicator(gs, &gs.g_element(b)).scale(&(int(1) / (int(2) * &lam)));
        for n in 0..gs.index_len() {
            let want = if oracle::active(m, n).contains(b) { rat(1, 2) } else { zero() };
            let got = mu_n(gs, n).map_err(|e| e.to_string()).map(|mu| mu.integrate(&f));
            rec.check_result(got.and_then(|g| expect_rat(&g, &want)), "μ_n(f_b) = ½·[n ∈ N_b]", || {
                job.replay(json!({ "generator": gs.name(b), "n": n }))
            });
        }
    }
}

pub fn lemma_3_3(job: &Job, _rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let all = gs.all_gens();
    let k_max = job.caps.max_k.min(3);
    for t in all.subsets() {
        for k in 1..=k_max {
            let replay = || job.replay(json!({ "T": set_json(gs, t), "k": k }));
            let mu = match mu_tk(gs, t, k) {
                Ok(mu) => mu,
                Err(e) => {
                    rec.check_result(Err(e.to_string()), "μ_T^k is computable", replay);
                    continue;
                }
            };
            rec.check(oracle::is_probability(mu.weights()), || "μ_T^k is a probability measure".into(), replay);
            for r in all.subsets() {
                let want = if r.is_subset(t) { pow(&oracle::meet_measure(gs, r), k) } else { zero() };
                rec.check_result(expect_rat(&mu.measure(&gs.j_element(r)), &want), "μ_T^k(J(r)) closed form", || {
                    job.replay(json!({ "T": set_json(gs, t), "k": k, "r": set_json(gs, r) }))
                });
            }
            if k == 1 {
                for r in all.subsets() {
                    for s in (all - r).subsets() {
                        let want = if r.is_subset(t) { oracle::cell_measure(gs, r, s & t) } else { zero() };
                        rec.check_result(
                            expect_rat(&mu.measure(&gs.w_element(r, s)), &want),
                            "μ_T(W(r,s)) closed form",
                            || job.replay(json!({ "T": set_json(gs, t), "r": set_json(gs, r), "s": set_json(gs, s) })),
                        );
                    }
                }
            }
            if k <= 2 {
                rec.check(gs.mu_t(t, k) == &mu, || "cached μ_T^k matches".into(), replay);
            }
        }
    }
    let cap = job.caps.max_k;
    rec.check(
        matches!(mu_tk_capped(gs, all, cap + 1, cap), Err(Error::PowerOverCap { .. })),
        || "power above the cap is rejected".into(),
        || job.replay(json!({ "k": cap + 1 })),
    );
}
