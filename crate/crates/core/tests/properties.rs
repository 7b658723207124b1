use num::{BigInt, Zero};
use proptest::prelude::*;
use stonemeasure::*;

fn model(weights: &[u8], gens: &[u8]) -> Option<GenSystem> {
    let total: i64 = weights.iter().map(|w| *w as i64).sum();
    let ws = weights.iter().map(|w| Rat::new(BigInt::from(*w), BigInt::from(total))).collect();
    let space = Space::from_weights(ws).ok()?;
    let n = weights.len();
    let events: Vec<Event> = gens.iter().map(|mask| space.event((0..n).filter(|i| mask >> i & 1 == 1))).collect();
    GenSystem::new(space, events).ok()
}

fn arb_model() -> impl Strategy<Value = GenSystem> {
    (2usize..=4, 1usize..=4)
        .prop_flat_map(|(n, m)| (prop::collection::vec(1u8..=4, n), prop::collection::vec(1u8..(1u8 << n), m)))
        .prop_filter_map("duplicate generators", |(w, g)| model(&w, &g))
}

fn arb_model_and_fn() -> impl Strategy<Value = (GenSystem, SimpleFn)> {
    (arb_model(), prop::collection::vec(-2i64..=2, 16)).prop_map(|(gs, vals)| {
        let g = SimpleFn::new(&gs, vals[..gs.atom_count()].iter().map(|v| Rat::from_integer((*v).into())).collect())
            .unwrap();
        (gs, g)
    })
}

fn arb_partition(gs: &GenSystem, pick: usize, max_blocks: usize) -> Partition {
    let parts: Vec<Partition> = all_partitions(gs.all_gens()).into_iter().filter(|d| d.len() <= max_blocks).collect();
    parts[pick % parts.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn representations_round_trip((gs, g) in arb_model_and_fn()) {
        let all = gs.all_gens();
        let j = to_jrep(&gs, &g, all).unwrap();
        prop_assert_eq!(j.realize(&gs), g.clone());
        prop_assert_eq!(j.to_wrep().to_jrep(), j.clone());
        let w = simplify(&gs, &j.to_wrep());
        prop_assert_eq!(w.realize(&gs), g.clone());
        prop_assert!(is_irreducible(&gs, &w));
        prop_assert!(factors_through(&gs, &g, w.support()));
        for sp in w.support().proper_subsets_canonical() {
            prop_assert!(!factors_through(&gs, &g, sp));
        }
    }

    #[test]
    fn norm_formulas_agree((gs, g) in arb_model_and_fn()) {
        prop_assert_eq!(norm_by_support(&gs, &g), g.sup_norm());
        let seq = moment_norms(&gs, &g, 12);
        for pair in seq.windows(2) {
            prop_assert!(pair[0] <= pair[1] * (1.0 + 1e-12) + 1e-300);
        }
        prop_assert!(seq[11] <= rat::to_f64(&g.sup_norm()) * (1.0 + 1e-12));
    }

    #[test]
    fn ad_membership_criterion_matches((gs, g) in arb_model_and_fn(), pick in 0usize..64) {
        let d = arb_partition(&gs, pick, 3);
        prop_assert_eq!(in_ad(&gs, &g, &d), in_ad_criterion(&gs, &g, &d));
    }

    #[test]
    fn decomposition_is_total((gs, g) in arb_model_and_fn()) {
        match decompose_sk(&gs, &g).unwrap() {
            Decomposition::Constant(c) => prop_assert_eq!(g, SimpleFn::constant(&gs, c)),
            Decomposition::Partitioned(d) => {
                prop_assert!(in_ad(&gs, &g, &d));
                prop_assert_eq!(norm_on_ad(&gs, &g, &d).unwrap(), g.sup_norm());
                let rec = AdRecovery::new(&gs, &g, &d).unwrap();
                let s = ad_representation(&gs, &g, &d).unwrap().support();
                for (i, b) in rec.generators().unwrap().into_iter().enumerate() {
                    prop_assert!(d.block(i).contains(b) && s.contains(b));
                }
            }
        }
    }

    #[test]
    fn separation_is_certified((gs, g) in arb_model_and_fn()) {
        if g.is_zero() {
            prop_assert_eq!(separation_witness(&gs, &g), Err(Error::ZeroFunction));
        } else {
            let w = separation_witness(&gs, &g).unwrap();
            prop_assert!(w.certified());
            prop_assert_eq!(mu_n(&gs, w.n).unwrap().integrate(&g), w.value);
        }
    }

    #[test]
    fn reconstruction_identity((gs, g) in arb_model_and_fn(), zbits in 0u32..16, p in 1u32..=4) {
        let z = GenSet(zbits) & gs.all_gens();
        let d = refinement_chain(gs.m(), z).pop().unwrap();
        let s = minimal_support(&gs, &g);
        let h = perturb_zero_coefficients(&gs, &g, s, &rat::rat(1, 3)).unwrap();
        prop_assume!(in_s_prime(&gs, &h, &d));
        prop_assert_eq!(phi_reconstructed(&gs, z, p, &h, &d).unwrap(), phi_direct(&gs, z, p, &h).unwrap());
    }

    #[test]
    fn measures_are_probabilities(gs in arb_model()) {
        for n in 0..gs.index_len() {
            prop_assert_eq!(mu_n(&gs, n).unwrap().total(), rat::one());
        }
        for t in gs.all_gens().subsets() {
            prop_assert_eq!(gs.mu_t(t, 1).total(), rat::one());
            prop_assert_eq!(gs.mu_t(t, 2).total(), rat::one());
        }
    }

    #[test]
    fn theta_recovers_j_coefficients((gs, g) in arb_model_and_fn(), pick in 0usize..64) {
        let d = arb_partition(&gs, pick, 4);
        let funcs = BlockFunctionals::new(&gs, &d, &g);
        let Some(s) = s_prime_support(&gs, &g, &d) else { return Ok(()) };
        let j = to_jrep(&gs, &g, s).unwrap();
        for r in s.subsets().into_iter().filter(|r| gs.is_fip(*r)) {
            let c = d.blocks_meeting(r);
            prop_assert_eq!(funcs.theta(c), j.coeff(r));
            prop_assert!(!j.coeff(r).is_zero());
            prop_assert_eq!(funcs.eta(c), &gs.meet_measure(r));
        }
    }
}
