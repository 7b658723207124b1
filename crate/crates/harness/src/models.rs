//! The models every suite runs over: the configured one plus a sweep of all
//! small generator systems.

use serde_json::{json, Value};
use stonemeasure::rat::{fmt_rat, rat};
use stonemeasure::{GenSystem, Rat, Space};

#[derive(Debug)]
pub struct Model {
    pub label: String,
    pub gs: GenSystem,
}

impl Model {
    pub fn new(label: impl Into<String>, gs: GenSystem) -> Self {
        Self { label: label.into(), gs }
    }

    /// Enough to rebuild the generator system.
    pub fn describe(&self) -> Value {
        describe(&self.label, &self.gs)
    }
}

pub fn describe(label: &str, gs: &GenSystem) -> Value {
    let space = gs.space();
    let gens: Vec<Value> = (0..gs.m())
        .map(|i| {
            let members: Vec<&str> =
                (0..space.len()).filter(|p| gs.gen(i).contains(*p)).map(|p| space.names()[p].as_str()).collect();
            json!({ "name": gs.name(i), "members": members })
        })
        .collect();
    json!({
        "label": label,
        "points": space.names(),
        "weights": space.weights().iter().map(fmt_rat).collect::<Vec<_>>(),
        "generators": gens,
    })
}

/// Largest generator count in the sweep.
pub const SWEEP_MAX_GENS: usize = 4;

fn sweep_spaces() -> Vec<(&'static str, Vec<Rat>)> {
    vec![
        ("2u", vec![rat(1, 2), rat(1, 2)]),
        ("2q", vec![rat(1, 4), rat(3, 4)]),
        ("3u", vec![rat(1, 3), rat(1, 3), rat(1, 3)]),
        ("3q", vec![rat(1, 4), rat(1, 4), rat(1, 2)]),
    ]
}

/// Every space with two or three points (uniform and skewed weights) and
/// every set of 1 to 4 distinct nonzero events on it, generators ordered by
/// event bitmask.
pub fn sweep() -> Vec<Model> {
    let mut out = Vec::new();
    for (tag, weights) in sweep_spaces() {
        let n = weights.len();
        let events: Vec<u32> = (1u32..1 << n).collect();
        for choice in 1u32..1 << events.len() {
            let picked: Vec<u32> = (0..events.len()).filter(|i| choice >> i & 1 == 1).map(|i| events[i]).collect();
            if picked.len() > SWEEP_MAX_GENS {
                continue;
            }
            let space = Space::from_weights(weights.clone()).expect("sweep weights are normalized");
            let gens: Vec<(String, _)> = picked
                .iter()
                .map(|mask| (format!("e{mask}"), space.event((0..n).filter(|p| mask >> p & 1 == 1))))
                .collect();
            let label = format!("{tag}:{}", picked.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","));
            let gs = GenSystem::with_names(space, gens, SWEEP_MAX_GENS).expect("distinct nonzero events");
            out.push(Model::new(label, gs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_size() {
        // per two-point space: 2^3 - 1 sets; per three-point space: C(7,1..=4)
        assert_eq!(sweep().len(), 2 * 7 + 2 * (7 + 21 + 35 + 35));
    }

    #[test]
    fn description_round_trips_names() {
        let models = sweep();
        let d = models[0].describe();
        assert_eq!(d["points"], json!(["w0", "w1"]));
        assert_eq!(d["weights"], json!(["1/2", "1/2"]));
    }
}
