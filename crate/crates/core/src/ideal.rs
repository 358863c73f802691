//! Monomial ideals, proper quotients `I/J`, and the ideal-level operations:
//! minimalization, colon and elimination by a variable, polarization, the
//! lcm number with witness chains, exponent rank and initial degree.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::Monomial;

/// A monomial ideal, held as its unique minimal generating set.
///
/// The generator list is always an antichain under divisibility, sorted in
/// the canonical graded lexicographic order. Two values compare equal if and
/// only if they generate the same ideal. The zero ideal has no generators and
/// the unit ideal is generated by the monomial 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds an ideal from an arbitrary generating set, minimalizing it:
    /// duplicates are merged and every generator divisible by another one is
    /// dropped.
    pub fn from_generators(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.n_vars() != n {
                return Err(Error::DimensionMismatch(n, g.n_vars()));
            }
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let mut keep = vec![true; gens.len()];
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i != j && keep[j] && gens[j].divides(&gens[i])? {
                    keep[i] = false;
                    break;
                }
            }
        }
        let gens = gens
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(g, _)| g)
            .collect();
        Ok(MonomialIdeal { n, gens })
    }

    /// The zero ideal in `n` variables.
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    /// The unit ideal in `n` variables, generated by 1.
    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Ideal membership: `x^a` lies in the ideal iff some minimal generator
    /// divides it.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.n_vars() != self.n {
            return Err(Error::DimensionMismatch(self.n, m.n_vars()));
        }
        for g in &self.gens {
            if g.divides(m)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether `other` is contained in `self` as an ideal.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lcm of all generators, or `None` for the zero ideal.
    pub fn generator_lcm(&self) -> Option<Monomial> {
        let mut it = self.gens.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, g| acc.lcm(g).expect("same ambient")))
    }

    /// Minimum degree among the minimal generators.
    pub fn indeg(&self) -> Result<u64> {
        self.gens
            .iter()
            .map(|g| g.degree())
            .min()
            .ok_or_else(|| Error::Undefined("indeg of the zero ideal".into()))
    }

    /// Rank of the matrix of generator exponent vectors over the rationals,
    /// computed by exact fraction-free elimination.
    pub fn rank_over_rationals(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self
            .gens
            .iter()
            .map(|g| g.exponents().iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        linalg::rank_bigint(&rows)
    }

    /// Polarization: the squarefree ideal obtained by spreading the exponent
    /// `a_i` of each variable over `a_i` fresh variables.
    ///
    /// The new variables are ordered `(1,1),(1,2),...,(2,1),...`, with
    /// `max_g deg_i(g)` copies of variable `i`.
    pub fn polarize(&self) -> Result<Polarization> {
        if self.is_zero() {
            return Err(Error::Precondition("polarization of the zero ideal".into()));
        }
        let widths: Vec<u64> = (0..self.n)
            .map(|i| self.gens.iter().map(|g| g.exponent(i)).max().unwrap_or(0))
            .collect();
        let total: u64 = widths.iter().sum();
        if total > 100_000 {
            return Err(Error::ResourceCap(format!(
                "polarization needs {total} variables"
            )));
        }
        let total = total as usize;
        let mut source = Vec::with_capacity(total);
        let mut offset = vec![0usize; self.n];
        let mut pos = 0;
        for i in 0..self.n {
            offset[i] = pos;
            for k in 0..widths[i] {
                source.push((i, k + 1));
                pos += 1;
            }
        }
        let mut new_gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut exps = vec![0u64; total];
            for i in 0..self.n {
                for k in 0..g.exponent(i) as usize {
                    exps[offset[i] + k] = 1;
                }
            }
            new_gens.push(Monomial::new(exps));
        }
        let ideal = MonomialIdeal::from_generators(total, new_gens)?;
        if ideal.num_generators() != self.gens.len() {
            return Err(Error::Invariant(
                "polarization did not preserve the generator antichain".into(),
            ));
        }
        Ok(Polarization { ideal, source })
    }
}

/// Result of [`MonomialIdeal::polarize`]: the squarefree ideal together with
/// the origin of each new variable as `(original variable, copy number)`.
#[derive(Clone, Debug)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub source: Vec<(usize, u64)>,
}

/// The shape of a quotient `I/J`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum QuotientShape {
    /// `J = 0`, the module is the ideal `I` itself.
    Ideal,
    /// `I` is the unit ideal, the module is the quotient ring `S/J`.
    RingQuotient,
    /// General proper pair `J ⊊ I`.
    Proper,
}

/// A proper quotient `I/J` of monomial ideals: `J ⊊ I` in the same ring.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Quotient {
    numerator: MonomialIdeal,
    denominator: MonomialIdeal,
}

impl Quotient {
    /// Validates that both ideals share the ambient ring, that `J ⊆ I`, and
    /// that the inclusion is strict.
    pub fn new(numerator: MonomialIdeal, denominator: MonomialIdeal) -> Result<Self> {
        if numerator.n_vars() != denominator.n_vars() {
            return Err(Error::DimensionMismatch(
                numerator.n_vars(),
                denominator.n_vars(),
            ));
        }
        if !numerator.contains_ideal(&denominator)? {
            return Err(Error::Precondition(
                "denominator is not contained in the numerator".into(),
            ));
        }
        if numerator == denominator {
            return Err(Error::DegenerateQuotient("I = J".into()));
        }
        Ok(Quotient {
            numerator,
            denominator,
        })
    }

    /// The quotient `I/0`, i.e. the ideal `I` viewed as a module.
    pub fn ideal(ideal: MonomialIdeal) -> Result<Self> {
        let n = ideal.n_vars();
        Quotient::new(ideal, MonomialIdeal::zero(n))
    }

    /// The quotient ring `S/J`, encoded as the pair `(1)/J`.
    pub fn ring_quotient(denominator: MonomialIdeal) -> Result<Self> {
        let n = denominator.n_vars();
        Quotient::new(MonomialIdeal::unit(n), denominator)
    }

    pub fn shape(&self) -> QuotientShape {
        if self.denominator.is_zero() {
            QuotientShape::Ideal
        } else if self.numerator.is_unit() {
            QuotientShape::RingQuotient
        } else {
            QuotientShape::Proper
        }
    }

    pub fn n_vars(&self) -> usize {
        self.numerator.n_vars()
    }

    pub fn numerator(&self) -> &MonomialIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &MonomialIdeal {
        &self.denominator
    }

    /// `G(I) ∪ G(J)` as a sorted set; duplicates between the two generating
    /// sets are merged. Repeated generators can never extend a strict lcm
    /// chain, so every chain statistic works on this set.
    pub fn merged_generators(&self) -> Vec<Monomial> {
        let mut gens: Vec<Monomial> = self
            .numerator
            .generators()
            .iter()
            .chain(self.denominator.generators())
            .cloned()
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    /// Colon of both sides by the variable `x_var`: each generator `u` is
    /// replaced by `u / gcd(u, x_var)` and the pair is minimalized.
    pub fn colon_by_variable(&self, var: usize) -> Result<Quotient> {
        let n = self.n_vars();
        if var >= n {
            return Err(Error::VariableOutOfRange { index: var, n });
        }
        let colon = |ideal: &MonomialIdeal| -> Result<MonomialIdeal> {
            let gens = ideal
                .generators()
                .iter()
                .map(|g| {
                    let mut exps = g.exponents().to_vec();
                    exps[var] = exps[var].saturating_sub(1);
                    Monomial::new(exps)
                })
                .collect();
            MonomialIdeal::from_generators(n, gens)
        };
        let num = colon(&self.numerator)?;
        let den = colon(&self.denominator)?;
        Quotient::new(num, den).map_err(|e| match e {
            Error::DegenerateQuotient(_) => Error::DegenerateQuotient(format!(
                "(J : x_{}) = (I : x_{})",
                var + 1,
                var + 1
            )),
            other => other,
        })
    }

    /// Elimination of the variable `x_var`: intersect both sides with the
    /// subring on the remaining variables. The ambient count drops by one.
    pub fn eliminate_variable(&self, var: usize) -> Result<Quotient> {
        let n = self.n_vars();
        if var >= n {
            return Err(Error::VariableOutOfRange { index: var, n });
        }
        let eliminate = |ideal: &MonomialIdeal| -> Result<MonomialIdeal> {
            let gens = ideal
                .generators()
                .iter()
                .filter(|g| g.exponent(var) == 0)
                .map(|g| {
                    let mut exps = g.exponents().to_vec();
                    exps.remove(var);
                    Monomial::new(exps)
                })
                .collect();
            MonomialIdeal::from_generators(n - 1, gens)
        };
        let num = eliminate(&self.numerator)?;
        let den = eliminate(&self.denominator)?;
        Quotient::new(num, den).map_err(|e| match e {
            Error::DegenerateQuotient(_) => Error::DegenerateQuotient(format!(
                "eliminating x_{} collapses the pair",
                var + 1
            )),
            other => other,
        })
    }

    /// Embeds the same pair into `n + 1` variables; the new variable occurs
    /// in no generator.
    pub fn free_variable_shift(&self) -> Quotient {
        let extend = |ideal: &MonomialIdeal| {
            let gens = ideal
                .generators()
                .iter()
                .map(|g| {
                    let mut exps = g.exponents().to_vec();
                    exps.push(0);
                    Monomial::new(exps)
                })
                .collect();
            MonomialIdeal::from_generators(ideal.n_vars() + 1, gens).expect("shift keeps validity")
        };
        Quotient {
            numerator: extend(&self.numerator),
            denominator: extend(&self.denominator),
        }
    }

    /// The lcm number: the longest sequence of generators whose running lcms
    /// strictly increase, together with one witness sequence.
    ///
    /// The search is a depth-first walk over states (current running lcm),
    /// memoized on the state. From a state `m`, any generator `g` with
    /// `lcm(m, g) != m` extends the chain by one.
    pub fn lcm_number(&self) -> Result<LcmChain> {
        let gens = self.merged_generators();
        if gens.is_empty() {
            return Err(Error::Undefined(
                "lcm number of a pair with no generators".into(),
            ));
        }
        // memo: state -> (extra steps achievable from here, generator used)
        let mut memo: HashMap<Monomial, (usize, Option<usize>)> = HashMap::new();

        fn best(
            state: &Monomial,
            gens: &[Monomial],
            memo: &mut HashMap<Monomial, (usize, Option<usize>)>,
        ) -> (usize, Option<usize>) {
            if let Some(hit) = memo.get(state) {
                return *hit;
            }
            let mut record = (0, None);
            for (idx, g) in gens.iter().enumerate() {
                let next = state.lcm(g).expect("same ambient");
                if next != *state {
                    let (extra, _) = best(&next, gens, memo);
                    if 1 + extra > record.0 {
                        record = (1 + extra, Some(idx));
                    }
                }
            }
            memo.insert(state.clone(), record);
            record
        }

        let mut best_start = 0usize;
        let mut best_len = 0usize;
        for (idx, g) in gens.iter().enumerate() {
            let (extra, _) = best(g, &gens, &mut memo);
            if 1 + extra > best_len {
                best_len = 1 + extra;
                best_start = idx;
            }
        }
        let mut chain = vec![gens[best_start].clone()];
        let mut state = gens[best_start].clone();
        while let Some(&(_, Some(idx))) = memo.get(&state) {
            chain.push(gens[idx].clone());
            state = state.lcm(&gens[idx]).expect("same ambient");
        }
        debug_assert_eq!(chain.len(), best_len);
        Ok(LcmChain { generators: chain })
    }
}

/// A witness for the lcm number: generators whose running lcms are strictly
/// increasing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LcmChain {
    pub generators: Vec<Monomial>,
}

impl LcmChain {
    /// The lcm number itself.
    pub fn length(&self) -> usize {
        self.generators.len()
    }

    /// The sequence `u_1, lcm(u_1,u_2), ..., lcm(u_1,...,u_t)`.
    pub fn running_lcms(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.generators.len());
        let mut acc: Option<Monomial> = None;
        for g in &self.generators {
            let next = match &acc {
                None => g.clone(),
                Some(m) => m.lcm(g).expect("same ambient"),
            };
            out.push(next.clone());
            acc = Some(next);
        }
        out
    }

    /// Checks the defining property of the witness.
    pub fn is_strict(&self) -> bool {
        let lcms = self.running_lcms();
        lcms.windows(2).all(|w| w[0] != w[1]) && !lcms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().map(|g| m(g)).collect()).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        // {x^2, x^2 y, x y} -> {x^2, x y}
        let i = ideal(2, &[&[2, 0], &[2, 1], &[1, 1]]);
        assert_eq!(i.generators(), &[m(&[1, 1]), m(&[2, 0])]);
    }

    #[test]
    fn minimalize_keeps_antichains() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(i.num_generators(), 3);
    }

    #[test]
    fn empty_input_is_zero_ideal() {
        let i = ideal(3, &[]);
        assert!(i.is_zero());
        assert_eq!(i, MonomialIdeal::zero(3));
    }

    #[test]
    fn minimalize_is_idempotent() {
        let i = ideal(2, &[&[2, 0], &[2, 1], &[1, 1], &[1, 1]]);
        let again =
            MonomialIdeal::from_generators(2, i.generators().to_vec()).unwrap();
        assert_eq!(i, again);
    }

    #[test]
    fn quotient_shapes() {
        let i = ideal(2, &[&[1, 0]]);
        assert_eq!(Quotient::ideal(i.clone()).unwrap().shape(), QuotientShape::Ideal);
        assert_eq!(
            Quotient::ring_quotient(i.clone()).unwrap().shape(),
            QuotientShape::RingQuotient
        );
        let j = ideal(2, &[&[2, 0]]);
        assert_eq!(
            Quotient::new(i, j).unwrap().shape(),
            QuotientShape::Proper
        );
    }

    #[test]
    fn degenerate_quotients_rejected() {
        let i = ideal(2, &[&[1, 0]]);
        assert!(matches!(
            Quotient::new(i.clone(), i.clone()),
            Err(Error::DegenerateQuotient(_))
        ));
        // J not inside I
        let j = ideal(2, &[&[0, 1]]);
        assert!(Quotient::new(i, j).is_err());
        // 0/0
        assert!(Quotient::ideal(MonomialIdeal::zero(2)).is_err());
    }

    #[test]
    fn colon_example() {
        // ((x^2, xy, y^2) : x) = (x, y)
        let q = Quotient::ideal(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let c = q.colon_by_variable(0).unwrap();
        assert_eq!(c.numerator(), &ideal(2, &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn colon_by_absent_variable_is_identity() {
        let q = Quotient::ideal(ideal(3, &[&[1, 1, 0]])).unwrap();
        let c = q.colon_by_variable(2).unwrap();
        assert_eq!(c.numerator(), q.numerator());
    }

    #[test]
    fn eliminate_examples() {
        // eliminate y from (x^2, xy, y^2): only x^2 survives
        let q = Quotient::ideal(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let e = q.eliminate_variable(1).unwrap();
        assert_eq!(e.n_vars(), 1);
        assert_eq!(e.numerator(), &ideal(1, &[&[2]]));

        let q = Quotient::ideal(ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        let e = q.eliminate_variable(2).unwrap();
        assert_eq!(e.numerator(), &ideal(2, &[&[1, 1]]));
    }

    #[test]
    fn eliminate_can_degenerate() {
        let q = Quotient::ideal(ideal(1, &[&[1]])).unwrap();
        assert!(matches!(
            q.eliminate_variable(0),
            Err(Error::DegenerateQuotient(_))
        ));
    }

    #[test]
    fn polarize_examples() {
        // (x^2) -> (x_{1,1} x_{1,2})
        let p = ideal(1, &[&[2]]).polarize().unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[1, 1]]));
        assert_eq!(p.source, vec![(0, 1), (0, 2)]);

        // (x^2, xy) -> (x_{1,1} x_{1,2}, x_{1,1} x_{2,1})
        let p = ideal(2, &[&[2, 0], &[1, 1]]).polarize().unwrap();
        assert_eq!(p.ideal, ideal(3, &[&[1, 1, 0], &[1, 0, 1]]));

        // squarefree ideals are fixed up to renaming
        let i = ideal(3, &[&[1, 0, 1], &[0, 1, 0]]);
        let p = i.polarize().unwrap();
        assert_eq!(p.ideal, i);
    }

    #[test]
    fn lcm_number_examples() {
        // (x^2, xy, y^2) in three variables: chain x^2 | x^2 y | x^2 y^2
        let q = Quotient::ideal(ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]])).unwrap();
        let chain = q.lcm_number().unwrap();
        assert_eq!(chain.length(), 3);
        assert!(chain.is_strict());

        // single generator
        let q = Quotient::ideal(ideal(1, &[&[1]])).unwrap();
        assert_eq!(q.lcm_number().unwrap().length(), 1);
    }

    #[test]
    fn lcm_number_complete_graph_ideal() {
        // (x_i x_j : i < j) in 4 variables has lcm number 3
        let mut gens = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                let mut e = vec![0u64; 4];
                e[i] = 1;
                e[j] = 1;
                gens.push(Monomial::new(e));
            }
        }
        let q = Quotient::ideal(MonomialIdeal::from_generators(4, gens).unwrap()).unwrap();
        assert_eq!(q.lcm_number().unwrap().length(), 3);
    }

    #[test]
    fn lcm_number_of_ring_quotient_adds_one() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let as_ideal = Quotient::ideal(i.clone()).unwrap().lcm_number().unwrap();
        let as_ring = Quotient::ring_quotient(i).unwrap().lcm_number().unwrap();
        assert_eq!(as_ring.length(), as_ideal.length() + 1);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).rank_over_rationals(), 2);
        assert_eq!(
            ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank_over_rationals(),
            3
        );
        assert_eq!(MonomialIdeal::zero(3).rank_over_rationals(), 0);
    }

    #[test]
    fn indeg_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).indeg().unwrap(), 2);
        assert_eq!(
            ideal(5, &[&[1, 1, 1, 0, 0], &[0, 1, 1, 1, 1]]).indeg().unwrap(),
            3
        );
        assert!(MonomialIdeal::zero(2).indeg().is_err());
    }

    #[test]
    fn free_shift_adds_unused_variable() {
        let q = Quotient::ideal(ideal(1, &[&[1]])).unwrap();
        let s = q.free_variable_shift();
        assert_eq!(s.n_vars(), 2);
        assert_eq!(s.numerator(), &ideal(2, &[&[1, 0]]));
    }
}
