//! Exact finite models of the Boolean algebra generated by a family of
//! sequence elements over a probability space, its Stone space, the measure
//! families built from an independent index family, and the functionals that
//! recover generators and the supremum norm from integrals alone.
//!
//! All arithmetic is over exact rationals ([`Rat`]). Generators are indexed
//! `0..m` and sets of generators are bitmasks ([`GenSet`]).
//!
//! ```
//! use stonemeasure::{GenSystem, Space, SimpleFn, norm_by_support};
//!
//! let space = Space::uniform(2).unwrap();
//! let a = space.event([0]);
//! let b = space.event([1]);
//! let gs = GenSystem::new(space, vec![a, b]).unwrap();
//! let g = SimpleFn::indicator(&gs, &gs.g_element(0));
//! assert_eq!(norm_by_support(&gs, &g), g.sup_norm());
//! ```

pub mod algebra;
pub mod bitset;
pub mod error;
pub mod exec;
pub mod functionals;
pub mod genset;
pub mod measures;
pub mod partition;
pub mod rat;
pub mod recovery;
pub mod repr;
pub mod stone;

pub use algebra::{build_gensystem, w_measure, AElem, Atom, Event, GenSystem, SeqElem, Space, DEFAULT_GENERATOR_CAP};
pub use bitset::BitSet;
pub use error::{Error, Result};
pub use exec::Exec;
pub use functionals::{
    eta_c, in_s_prime, lambda_sum, moment_norms, norm_by_moments, norm_by_support, nu_ck, nu_measure,
    perturb_zero_coefficients, phi_direct, phi_reconstructed, s_prime_support, theta_c, BlockFunctionals,
    FunctionalContext,
};
pub use genset::{GenSet, MAX_GENERATORS};
pub use measures::{
    extend_measure, integrate, mn_deficiency_witness, mu_n, mu_tk, mu_tk_capped, ExtensionStrategy, MeasureA,
    SubalgebraMeasure, DEFAULT_POWER_CAP, PRODUCT_POINT_LIMIT,
};
pub use partition::{all_partitions, refinement_chain, BlockSet, Partition};
pub use rat::Rat;
pub use recovery::{
    ad_representation, collapses_to, decompose_sk, in_ad, in_ad_criterion, is_irreducible, l_dp, minimal_support, n_dp,
    norm_on_ad, psi, separation_witness, simplify, AdRecovery, Decomposition, IntegralTable, SeparationWitness,
};
pub use repr::{factors_through, to_jrep, to_wrep, JRep, WRep};
pub use stone::{density_basis, membership, points, BasisMode, Point, SimpleFn};
