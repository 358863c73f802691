//! Reproducible random instances. Every instance is a pure function of
//! `(seed, index)`: the generator is ChaCha8 keyed by the seed with the
//! index as stream, and all sampling goes through explicit rejection so the
//! stream does not depend on library internals.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use stanley::error::{Error, Result};
use stanley::ideal::{MonomialIdeal, Quotient};
use stanley::monomial::Monomial;
use stanley::simplicial::SimplicialComplex;

const REJECTION_BUDGET: u32 = 10_000;

/// Deterministic per-instance random stream.
pub struct DetRng {
    rng: ChaCha8Rng,
    rejections: u32,
}

impl DetRng {
    pub fn for_instance(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        DetRng {
            rng,
            rejections: 0,
        }
    }

    /// Uniform value in `0..bound`, by rejection on the top zone.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, numerator: u64, denominator: u64) -> bool {
        self.below(denominator) < numerator
    }

    fn charge_rejection(&mut self) -> Result<()> {
        self.rejections += 1;
        if self.rejections > REJECTION_BUDGET {
            Err(Error::ResourceCap("rejection budget exhausted".into()))
        } else {
            Ok(())
        }
    }
}

/// Deterministic resource caps applied to each instance.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Caps {
    pub max_lattice_elements: usize,
    pub max_poset_points: usize,
    pub d_max: usize,
    /// Search-node budget per invocation; a deterministic stand-in for a
    /// per-instance time budget, so reports stay byte-identical.
    pub node_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_lattice_elements: 1_000_000,
            max_poset_points: 1_000_000,
            d_max: 6,
            node_budget: 20_000_000,
        }
    }
}

/// Parameters of one experiment. Identical config and seed reproduce the
/// identical instance stream.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n: usize,
    pub max_exponent: u64,
    pub max_generators: usize,
    pub squarefree: bool,
    pub sample_count: usize,
    /// When set, instances cycle through the three quotient shapes; when
    /// unset only plain ideals `I/0` are drawn.
    pub quotient_shapes: bool,
    pub caps: Caps,
}

impl ExperimentConfig {
    pub fn new(seed: u64, sample_count: usize) -> Self {
        ExperimentConfig {
            seed,
            n: 4,
            max_exponent: 2,
            max_generators: 4,
            squarefree: false,
            sample_count,
            quotient_shapes: false,
            caps: Caps::default(),
        }
    }

    /// One line recording the sampling model, echoed in report headers.
    pub fn model_description(&self) -> String {
        format!(
            "independent uniform exponents in 0..={} ({} generators max, zero vectors rejected), \
             minimalized; shapes {}; ChaCha8(seed={}, stream=index)",
            if self.squarefree { 1 } else { self.max_exponent },
            self.max_generators,
            if self.quotient_shapes {
                "I, S/I, I/J"
            } else {
                "I only"
            },
            self.seed
        )
    }
}

fn random_monomial(rng: &mut DetRng, n: usize, max_exponent: u64) -> Result<Monomial> {
    loop {
        let exps: Vec<u64> = (0..n).map(|_| rng.below(max_exponent + 1)).collect();
        if exps.iter().any(|&e| e > 0) {
            return Ok(Monomial::new(exps));
        }
        rng.charge_rejection()?;
    }
}

fn random_ideal_using(rng: &mut DetRng, cfg: &ExperimentConfig) -> Result<MonomialIdeal> {
    let max_exponent = if cfg.squarefree { 1 } else { cfg.max_exponent };
    if max_exponent == 0 {
        return Err(Error::Precondition(
            "max_exponent 0 admits only the zero vector".into(),
        ));
    }
    let count = rng.range_inclusive(1, cfg.max_generators as u64) as usize;
    let gens = (0..count)
        .map(|_| random_monomial(rng, cfg.n, max_exponent))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::from_generators(cfg.n, gens)
}

/// The `index`-th random ideal of the stream: a nonzero proper monomial
/// ideal whose generators form an antichain.
pub fn random_monomial_ideal(cfg: &ExperimentConfig, index: u64) -> Result<MonomialIdeal> {
    let mut rng = DetRng::for_instance(cfg.seed, index);
    random_ideal_using(&mut rng, cfg)
}

/// The `index`-th random quotient. With `quotient_shapes` unset this is
/// `I/0`; otherwise the shape is drawn uniformly from `I/0`, `S/I`, and a
/// proper pair `I/J` whose denominator multiplies a subset of `G(I)` by
/// nontrivial monomials.
pub fn random_quotient(cfg: &ExperimentConfig, index: u64) -> Result<Quotient> {
    let mut rng = DetRng::for_instance(cfg.seed, index);
    let shape = if cfg.quotient_shapes {
        rng.below(3)
    } else {
        0
    };
    let ideal = random_ideal_using(&mut rng, cfg)?;
    match shape {
        0 => Quotient::ideal(ideal),
        1 => Quotient::ring_quotient(ideal),
        _ => {
            let max_exponent = if cfg.squarefree { 1 } else { cfg.max_exponent };
            let mut denominator_gens = vec![];
            for g in ideal.generators() {
                if rng.chance(1, 2) {
                    let multiplier = random_monomial(&mut rng, cfg.n, max_exponent)?;
                    denominator_gens.push(g.mul(&multiplier)?);
                }
            }
            let denominator = MonomialIdeal::from_generators(cfg.n, denominator_gens)?;
            Quotient::new(ideal, denominator)
        }
    }
}

/// The `index`-th random non-void complex on `n` vertices, generated by up
/// to `max_facets` random nonempty vertex subsets.
pub fn random_complex(seed: u64, index: u64, n: usize, max_facets: usize) -> Result<SimplicialComplex> {
    let mut rng = DetRng::for_instance(seed, index);
    let count = rng.range_inclusive(1, max_facets as u64) as usize;
    let mut facets = vec![];
    for _ in 0..count {
        loop {
            let facet: Vec<usize> = (0..n).filter(|_| rng.chance(1, 2)).collect();
            if !facet.is_empty() {
                facets.push(facet);
                break;
            }
            rng.charge_rejection()?;
        }
    }
    SimplicialComplex::new(n, facets)
}

/// All non-void complexes on the vertex set `[n]`: every antichain of
/// nonempty subsets, plus the empty complex `{∅}`.
pub fn enumerate_complexes(n: usize) -> Vec<SimplicialComplex> {
    assert!(n <= 4, "exhaustive enumeration is for tiny vertex sets");
    let subsets: Vec<u64> = (1..(1u64 << n)).collect();
    let mut out = vec![SimplicialComplex::empty_complex(n)];
    // antichains of nonempty subsets, chosen by bitmask over the subsets
    for pick in 1u64..(1 << subsets.len()) {
        let chosen: Vec<u64> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let antichain = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| a == b || (a & b != a && a & b != b)));
        if antichain {
            let facets: Vec<Vec<usize>> = chosen
                .iter()
                .map(|&mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
                .collect();
            out.push(SimplicialComplex::new(n, facets).expect("small complexes"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let cfg = ExperimentConfig::new(42, 10);
        for index in 0..10 {
            let a = random_monomial_ideal(&cfg, index).unwrap();
            let b = random_monomial_ideal(&cfg, index).unwrap();
            assert_eq!(a, b);
        }
        let other_seed = ExperimentConfig::new(43, 10);
        let differs = (0..10).any(|i| {
            random_monomial_ideal(&cfg, i).unwrap()
                != random_monomial_ideal(&other_seed, i).unwrap()
        });
        assert!(differs);
    }

    #[test]
    fn squarefree_flag_is_respected() {
        let cfg = ExperimentConfig {
            squarefree: true,
            ..ExperimentConfig::new(7, 50)
        };
        for index in 0..50 {
            let ideal = random_monomial_ideal(&cfg, index).unwrap();
            assert!(ideal.is_squarefree());
            assert!(!ideal.is_zero());
            assert!(!ideal.is_unit());
        }
    }

    #[test]
    fn generators_are_antichains() {
        let cfg = ExperimentConfig::new(11, 100);
        for index in 0..100 {
            let ideal = random_monomial_ideal(&cfg, index).unwrap();
            let gens = ideal.generators();
            for a in gens {
                for b in gens {
                    if a != b {
                        assert!(!a.divides(b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_shapes_are_valid() {
        let cfg = ExperimentConfig {
            quotient_shapes: true,
            ..ExperimentConfig::new(3, 60)
        };
        let mut seen = [false; 3];
        for index in 0..60 {
            let q = random_quotient(&cfg, index).unwrap();
            match q.shape() {
                stanley::ideal::QuotientShape::Ideal => seen[0] = true,
                stanley::ideal::QuotientShape::RingQuotient => seen[1] = true,
                stanley::ideal::QuotientShape::Proper => seen[2] = true,
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn complex_enumeration_counts() {
        // on [2]: {∅}, <{1}>, <{2}>, <{1},{2}>, <{1,2}>
        assert_eq!(enumerate_complexes(2).len(), 5);
        // one less than the Dedekind numbers M(3) = 20 and M(4) = 168
        assert_eq!(enumerate_complexes(3).len(), 19);
        assert_eq!(enumerate_complexes(4).len(), 167);
    }

    #[test]
    fn random_complexes_are_never_void() {
        for index in 0..50 {
            let c = random_complex(5, index, 5, 4).unwrap();
            assert!(!c.is_void());
            assert_eq!(c.n_vertices(), 5);
        }
    }
}
