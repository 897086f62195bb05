//! Seeded random curve sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::g2::identity::{Constraint, IdentityId};
use crate::g2::verify::{verify_all, JsonEntry, VerifyReport};
use crate::ring::{CurveParams, Rat};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub count: usize,
    pub seed: u64,
    /// Constraints imposed on every sampled curve, e.g. `λ₀ = λ₆ = 0`.
    pub constraints: Vec<Constraint>,
    /// Numerators are drawn from `[-num_bound, num_bound]`.
    pub num_bound: i64,
    /// Denominators are drawn from `[1, den_max]`.
    pub den_max: i64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            count: 20,
            seed: 42,
            constraints: Vec::new(),
            num_bound: 100,
            den_max: 10,
        }
    }
}

impl SweepConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        Self {
            count,
            seed,
            ..Self::default()
        }
    }

    pub fn with_constraints(mut self, c: &[Constraint]) -> Self {
        self.constraints.extend_from_slice(c);
        self
    }
}

/// Sample `config.count` curves satisfying the configured constraints plus the
/// nonvanishing conditions any of `ids` needs.
pub fn sample_curves(config: &SweepConfig, ids: &[IdentityId]) -> Vec<CurveParams> {
    let mut needed = config.constraints.clone();
    for c in [Constraint::Lambda5NonZero, Constraint::Lambda1NonZero] {
        if ids.iter().any(|id| id.required_constraints().contains(&c)) {
            needed.push(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.count);
    while out.len() < config.count {
        let mut lambda: [Rat; 7] = std::array::from_fn(|_| {
            let n = rng.gen_range(-config.num_bound..=config.num_bound);
            let d = rng.gen_range(1..=config.den_max.max(1));
            Rat::new(n.into(), d.into())
        });
        for c in &config.constraints {
            match c {
                Constraint::Lambda0Zero => lambda[0] = Rat::from_integer(0.into()),
                Constraint::Lambda6Zero => lambda[6] = Rat::from_integer(0.into()),
                Constraint::Lambda1Lambda5Four => {
                    lambda[1] = Rat::from_integer(4.into());
                    lambda[5] = Rat::from_integer(4.into());
                }
                Constraint::Lambda5NonZero | Constraint::Lambda1NonZero => {}
            }
        }
        let Ok(p) = CurveParams::new(lambda) else {
            continue;
        };
        if needed.iter().all(|c| c.holds(&p)) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub ids: Vec<IdentityId>,
    pub curves: Vec<VerifyReport>,
}

#[derive(Serialize)]
struct SweepEntry {
    curve_index: usize,
    #[serde(flatten)]
    entry: JsonEntry,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    seed: u64,
    count: usize,
    constraints: Vec<&'a str>,
    identities: Vec<&'a str>,
    zero: usize,
    nonzero: usize,
    skipped: usize,
    failing_curves: Vec<usize>,
    entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn total(&self, label: &str) -> usize {
        self.curves.iter().map(|r| r.count(label)).sum()
    }

    /// Indices of curves with at least one nonzero residual.
    pub fn failing_curves(&self) -> Vec<usize> {
        self.curves
            .iter()
            .enumerate()
            .filter(|(_, r)| r.any_nonzero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.curves.iter().all(VerifyReport::all_zero)
    }

    /// Deterministic JSON: no timings, entries ordered by curve index.
    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .curves
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.json_entries(false)
                    .into_iter()
                    .map(move |entry| SweepEntry {
                        curve_index: i,
                        entry,
                    })
            })
            .collect();
        let doc = SweepJson {
            seed: self.config.seed,
            count: self.config.count,
            constraints: self
                .config
                .constraints
                .iter()
                .map(|c| c.describe())
                .collect(),
            identities: self.ids.iter().map(|id| id.tag()).collect(),
            zero: self.total("zero"),
            nonzero: self.total("nonzero"),
            skipped: self.total("skipped"),
            failing_curves: self.failing_curves(),
            entries,
        };
        serde_json::to_value(doc).expect("sweep report serializes")
    }
}

/// Verify `ids` on every sampled curve; curves run in parallel with the `parallel` feature.
pub fn sweep(config: &SweepConfig, ids: &[IdentityId]) -> SweepReport {
    let curves = sample_curves(config, ids);
    #[cfg(feature = "parallel")]
    let curves = curves.par_iter().map(|p| verify_all(p, ids)).collect();
    #[cfg(not(feature = "parallel"))]
    let curves = curves.iter().map(|p| verify_all(p, ids)).collect();
    SweepReport {
        config: config.clone(),
        ids: ids.to_vec(),
        curves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::identity::IdentitySet;
    use num_traits::Zero;

    #[test]
    fn same_seed_same_curves() {
        let cfg = SweepConfig::new(5, 7);
        let ids = IdentitySet::Weierstrass.ids();
        assert_eq!(sample_curves(&cfg, &ids), sample_curves(&cfg, &ids));
        assert_ne!(
            sample_curves(&cfg, &ids),
            sample_curves(&SweepConfig::new(5, 8), &ids)
        );
    }

    #[test]
    fn constraints_respected() {
        let cfg = SweepConfig::new(10, 1)
            .with_constraints(&[Constraint::Lambda0Zero, Constraint::Lambda6Zero]);
        for p in sample_curves(&cfg, &IdentitySet::Jacobi.ids()) {
            assert!(p.lambda(0).is_zero() && p.lambda(6).is_zero() && !p.lambda(1).is_zero());
        }
    }
}
