//! The verification suites. Each runs once per model with its own seeded
//! RNG and records one case per checked claim.

mod algebra;
mod functionals;
mod measures;
mod recovery;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stonemeasure::rat::fmt_rat;
use stonemeasure::{GenSet, GenSystem, Partition, Rat, SimpleFn};

use crate::config::Caps;
use crate::models::Model;
use crate::report::Recorder;

/// Everything a suite needs about the current run and model.
pub struct Job<'a> {
    pub suite: &'static str,
    pub seed: u64,
    pub caps: Caps,
    /// Randomized draws this model owes the suite.
    pub draws: usize,
    pub model_index: usize,
    pub model: &'a Model,
    /// Whether this is the configured model rather than a sweep model.
    pub primary: bool,
}

impl Job<'_> {
    pub fn gs(&self) -> &GenSystem {
        &self.model.gs
    }

    /// Replay data for a failing case: enough to rebuild the model and
    /// rerun the exact inputs.
    pub fn replay(&self, inputs: Value) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "model_index": self.model_index,
            "model": self.model.describe(),
            "inputs": inputs,
        })
    }
}

pub type SuiteFn = fn(&Job, &mut ChaCha8Rng, &mut Recorder);

pub struct SuiteDef {
    pub name: &'static str,
    pub anchor: &'static str,
    /// Lower bound on randomized draws across all models.
    pub min_draws: usize,
    pub run: SuiteFn,
}

pub const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "lemma-2.2",
        anchor: "Lemma 2.2 (zero criterion for W(s,t))",
        min_draws: 0,
        run: algebra::lemma_2_2,
    },
    SuiteDef {
        name: "lemma-2.3",
        anchor: "Lemma 2.3 (\"K = {F_X : X ∈ FIP(𝔅)}\")",
        min_draws: 0,
        run: algebra::lemma_2_3,
    },
    SuiteDef {
        name: "lemma-2.4",
        anchor: "Lemma 2.4 (density of basic clopens)",
        min_draws: 0,
        run: algebra::lemma_2_4,
    },
    SuiteDef {
        name: "fact-2.4-witness",
        anchor: "Fact (Mägerl–Namioka criterion)",
        min_draws: 200,
        run: measures::fact_2_4,
    },
    SuiteDef {
        name: "lemma-2.5-extend",
        anchor: "Lemma 2.5's extension mechanism",
        min_draws: 200,
        run: measures::lemma_2_5,
    },
    SuiteDef {
        name: "thm-2.1-separation",
        anchor: "Theorem 2.1 (separation half, proof Steps 1–4)",
        min_draws: 500,
        run: measures::thm_2_1,
    },
    SuiteDef {
        name: "remark-3.1",
        anchor: "Remark 3.1's computation \"(μ_n ∘ f)(N_b)\"",
        min_draws: 0,
        run: measures::remark_3_1,
    },
    SuiteDef {
        name: "lemma-3.3",
        anchor: "Lemma 3.3 (μ_T^k via free products)",
        min_draws: 0,
        run: measures::lemma_3_3,
    },
    SuiteDef { name: "lemma-3.6", anchor: "Lemma 3.6 (i)–(v)", min_draws: 200, run: functionals::lemma_3_6 },
    SuiteDef {
        name: "eq-3.2",
        anchor: "Lemma 3.7 / Eq. (3.2) (\"φ_{Z,p}(g) = Σ_{β∈Λ} ...\")",
        min_draws: 200,
        run: functionals::eq_3_2,
    },
    SuiteDef {
        name: "thm-3.9",
        anchor: "Theorem 3.9 norm formula (\"sup_{Z∈𝒵} limsup_{p→∞}\")",
        min_draws: 200,
        run: functionals::thm_3_9,
    },
    SuiteDef { name: "lemma-3.10", anchor: "Lemma 3.10 (simplification)", min_draws: 200, run: recovery::lemma_3_10 },
    SuiteDef {
        name: "lemma-3.13",
        anchor: "Lemma 3.13 (criteria (⋆),(⋆⋆))",
        min_draws: 200,
        run: recovery::lemma_3_13,
    },
    SuiteDef {
        name: "lemma-3.15",
        anchor: "Lemma 3.15 (equivalences for b_0 ∈ T)",
        min_draws: 200,
        run: recovery::lemma_3_15,
    },
    SuiteDef { name: "lemma-3.17", anchor: "Lemma 3.17 (norm on A_D)", min_draws: 200, run: recovery::lemma_3_17 },
    SuiteDef {
        name: "thm-3.18",
        anchor: "Theorem 3.18 decomposition (\"S(K) = ⋃_{D∈Π} A_D(K)\")",
        min_draws: 200,
        run: recovery::thm_3_18,
    },
];

pub fn find(name: &str) -> Option<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name)
}

// ---- draw helpers ----

/// A small rational in `[-4, 4]` with denominator up to 3.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != Rat::from_integer(0.into()) {
            return r;
        }
    }
}

/// A random simple function; about one in eight draws has only two values.
pub fn random_fn(gs: &GenSystem, rng: &mut ChaCha8Rng) -> SimpleFn {
    if rng.gen_ratio(1, 8) {
        let (a, b) = (small_rat(rng), small_rat(rng));
        let values = (0..gs.atom_count()).map(|_| if rng.gen_bool(0.5) { a.clone() } else { b.clone() }).collect();
        return SimpleFn::new(gs, values).expect("sized");
    }
    SimpleFn::new(gs, (0..gs.atom_count()).map(|_| small_rat(rng)).collect()).expect("sized")
}

/// A support with one generator from every block (`exact`) or from each
/// block with probability 2/3.
pub fn support_per_block(d: &Partition, rng: &mut ChaCha8Rng, exact: bool) -> GenSet {
    let mut s = GenSet::EMPTY;
    for block in d.blocks() {
        if exact || rng.gen_ratio(2, 3) {
            let members: Vec<usize> = block.iter().collect();
            s = s.with(members[rng.gen_range(0..members.len())]);
        }
    }
    s
}

pub fn set_json(gs: &GenSystem, s: GenSet) -> Value {
    Value::String(gs.fmt_set(s))
}

pub fn partition_json(gs: &GenSystem, d: &Partition) -> Value {
    Value::Array(d.blocks().iter().map(|b| set_json(gs, *b)).collect())
}

/// Atom-by-atom values, in atom order.
pub fn fn_json(gs: &GenSystem, g: &SimpleFn) -> Value {
    Value::Array(
        g.values().iter().enumerate().map(|(i, v)| json!([gs.fmt_set(gs.atom(i).set()), fmt_rat(v)])).collect(),
    )
}

/// Renders an equality failure as `"got X, expected Y"`.
pub fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

pub fn expect_rat(got: &Rat, want: &Rat) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {}, expected {}", fmt_rat(got), fmt_rat(want)))
    }
}
