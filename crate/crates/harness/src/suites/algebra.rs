use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonemeasure::{density_basis, membership, points, AElem, BasisMode, BitSet, Error, GenSet, GenSystem, Point};

use super::{expect_eq, set_json, Job};
use crate::oracle;
use crate::report::Recorder;

/// Atom counts up to these get every element checked; above, a sample.
const DENSITY_EXHAUSTIVE_ATOMS: usize = 16;
const LAWS_EXHAUSTIVE_ATOMS: usize = 12;
const SAMPLED_ELEMENTS: usize = 256;

fn element(gs: &GenSystem, bits: u64) -> AElem {
    AElem::from_bits(BitSet::from_u64(gs.atom_count(), bits))
}

fn random_element(gs: &GenSystem, rng: &mut ChaCha8Rng) -> AElem {
    let k = gs.atom_count();
    element(gs, rng.gen::<u64>() & ((1u64 << k) - 1))
}

/// Elements to test: all of them for small algebras, otherwise a seeded
/// sample that always includes bottom and top.
fn elements(gs: &GenSystem, limit: usize, rng: &mut ChaCha8Rng) -> Vec<AElem> {
    let k = gs.atom_count();
    if k <= limit {
        (0..1u64 << k).map(|bits| element(gs, bits)).collect()
    } else {
        let mut out = vec![gs.bottom(), gs.top()];
        out.extend((0..SAMPLED_ELEMENTS).map(|_| random_element(gs, rng)));
        out
    }
}

pub fn lemma_2_2(job: &Job, _rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let m = gs.m();
    let all = gs.all_gens();

    rec.check_result(
        gs.check_independence().map_err(|(s, t)| format!("no index in N_s \\ N_t for s={s:?}, t={t:?}")),
        "index family is independent",
        || job.replay(json!({})),
    );
    let terms = oracle::minterms(gs);
    let atoms: Vec<GenSet> = gs.atoms().iter().map(|a| a.set()).collect();
    rec.check_result(expect_eq(&atoms, &terms), "atoms are the nonzero minterms", || job.replay(json!({})));

    for s in all.subsets() {
        for t in all.subsets() {
            let replay = || job.replay(json!({ "s": set_json(gs, s), "t": set_json(gs, t) }));
            let zero = oracle::w_is_zero(gs, s, t);
            rec.check_result(expect_eq(gs.is_zero_formula(s, t), zero), "W(s,t) = 0 iff s∩t≠∅ or ⋂s = ∅", replay);
            rec.check_result(
                expect_eq(gs.realize(&gs.w_element(s, t)).entries().to_vec(), oracle::w_entries(gs, s, t)),
                "W(s,t) realizes entrywise",
                replay,
            );
        }
        // J(s)(n) is ⋂s when s ⊆ active(n), else empty
        for n in 0..1usize << m {
            let want = if s.is_subset(oracle::active(m, n)) { gs.meet(s) } else { gs.space().empty_event() };
            rec.check_result(
                expect_eq(gs.realize(&gs.j_element(s)).entry(n).clone(), want),
                "J(s) entry formula",
                || job.replay(json!({ "s": set_json(gs, s), "n": n })),
            );
        }
    }

    // atom realizations partition the top element
    let seqs: Vec<_> = gs.atoms().iter().map(|a| gs.atom_seq(*a)).collect();
    let disjoint = (0..seqs.len()).all(|i| (i + 1..seqs.len()).all(|j| seqs[i].is_disjoint(&seqs[j])));
    let cover = seqs.iter().fold(gs.seq_bottom(), |acc, s| acc.join(s)) == gs.seq_top();
    rec.check(disjoint && cover, || "atoms partition the top element".into(), || job.replay(json!({})));
}

pub fn lemma_2_3(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let m = gs.m();
    let k = oracle::minterms(gs).len();
    let fip = (0u32..1 << m).filter(|r| !oracle::meet_measure(gs, GenSet(*r)).eq(&stonemeasure::rat::zero())).count();
    let ultra = oracle::ultrafilter_count(k);
    let pts = points(gs);
    rec.check(
        ultra == pts.len() && fip == pts.len(),
        || format!("point count: {} points, {ultra} ultrafilters, {fip} FIP sets", pts.len()),
        || job.replay(json!({})),
    );

    let elems = elements(gs, LAWS_EXHAUSTIVE_ATOMS, rng);
    for p in &pts {
        let x = p.set();
        let replay = |extra: serde_json::Value| job.replay(json!({ "point": set_json(gs, x), "element": extra }));
        for i in 0..m {
            rec.check(
                membership(gs, &gs.g_element(i), *p) == x.contains(i),
                || format!("G_b ∈ F_X iff b ∈ X: generator {}", gs.name(i)),
                || replay(json!(i)),
            );
        }
        for a in &elems {
            let b = random_element(gs, rng);
            let (fa, fb) = (membership(gs, a, *p), membership(gs, &b, *p));
            let ok = fa != membership(gs, &a.complement(), *p)
                && membership(gs, &a.intersection(&b), *p) == (fa && fb)
                && membership(gs, &a.union(&b), *p) == (fa || fb);
            rec.check(
                ok,
                || "F_X is an ultrafilter: law violated".into(),
                || replay(json!([a.bits().as_u64(), b.bits().as_u64()])),
            );
        }
    }
    // distinct points give distinct filters (they differ on some generator)
    let distinct = pts.iter().enumerate().all(|(i, p)| pts[i + 1..].iter().all(|q| p.set() != q.set()));
    rec.check(distinct, || "points are distinct".into(), || job.replay(json!({})));
}

pub fn lemma_2_4(job: &Job, rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let gs = job.gs();
    let terms = oracle::minterms(gs);
    rec.check(
        density_basis(gs, &gs.bottom(), Point::of(gs.atom(0)), BasisMode::Minimal) == Err(Error::EmptyElement),
        || "empty element is rejected".into(),
        || job.replay(json!({})),
    );
    let pts = points(gs);
    for a in elements(gs, DENSITY_EXHAUSTIVE_ATOMS, rng) {
        for p in pts.iter().copied() {
            if !membership(gs, &a, p) {
                continue;
            }
            let x = p.set();
            for mode in [BasisMode::Minimal, BasisMode::PointSupport] {
                let replay = || {
                    job.replay(
                        json!({ "element": a.bits().as_u64(), "point": set_json(gs, x), "mode": format!("{mode:?}") }),
                    )
                };
                let outcome = density_basis(gs, &a, p, mode).map_err(|e| e.to_string()).and_then(|(s, t)| {
                    if !s.is_subset(x) || !t.is_disjoint(x) {
                        return Err(format!("point outside W({s:?},{t:?})"));
                    }
                    if mode == BasisMode::PointSupport && s != x {
                        return Err(format!("s = {s:?} is not X"));
                    }
                    // every minterm of W(s,t) lies in a
                    match terms.iter().find(|r| {
                        s.is_subset(**r) && r.is_disjoint(t) && !a.contains_atom(gs.atom_index(**r).expect("atom"))
                    }) {
                        Some(r) => Err(format!("W({s:?},{t:?}) contains minterm {r:?} outside the element")),
                        None => Ok(()),
                    }
                });
                rec.check_result(outcome, "p ∈ W(s,t) ⊆ a", replay);
            }
        }
    }
}
