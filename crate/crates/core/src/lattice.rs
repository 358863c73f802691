//! The lcm lattice of a quotient `I/J`: all least common multiples of
//! non-empty generator subsets, ordered by divisibility, with an extra
//! bottom element `0̂`.
//!
//! The bottom is a sentinel, not an exponent vector, so it never collides
//! with the monomial 1 when the unit ideal takes part (the quotient-ring
//! shape `S/I` places 1 just above `0̂`). Lattice indices: 0 is the bottom,
//! monomial elements are `1..=n_monomials` in graded lexicographic order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Quotient;
use crate::monomial::Monomial;
use crate::posets::{FinitePoset, FiniteJoinSemilattice};
use crate::simplicial::SimplicialComplex;

pub const DEFAULT_LATTICE_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LcmLattice {
    n_vars: usize,
    monomials: Vec<Monomial>,
    /// Full order, `(len) x (len)` row-major, index 0 is the bottom.
    leq: Vec<bool>,
    /// Join table over lattice indices.
    join: Vec<u32>,
    covers: Vec<(u32, u32)>,
    numerator_marks: Vec<bool>,
    denominator_marks: Vec<bool>,
}

/// Builds the lattice with the default element cap.
pub fn build_lcm_lattice(q: &Quotient) -> Result<LcmLattice> {
    build_lcm_lattice_capped(q, DEFAULT_LATTICE_CAP)
}

/// Closure of `G(I) ∪ G(J)` under pairwise lcm, by fixed-point iteration.
pub fn build_lcm_lattice_capped(q: &Quotient, cap: usize) -> Result<LcmLattice> {
    let gens = q.merged_generators();
    if gens.is_empty() {
        return Err(Error::Undefined(
            "lcm lattice of a pair with no generators".into(),
        ));
    }
    let mut elems = gens.clone();
    loop {
        let before = elems.len();
        let mut fresh = vec![];
        for i in 0..before {
            for j in i + 1..before {
                let join = elems[i].lcm(&elems[j]).expect("same ambient");
                if !elems.contains(&join) && !fresh.contains(&join) {
                    fresh.push(join);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        elems.extend(fresh);
        if elems.len() > cap {
            return Err(Error::ResourceCap(format!(
                "lcm lattice exceeds {cap} elements"
            )));
        }
    }
    elems.sort();
    LcmLattice::from_elements(q.n_vars(), elems, |m| {
        (
            q.numerator().generators().contains(m),
            q.denominator().generators().contains(m),
        )
    })
}

impl LcmLattice {
    /// Assembles the tables from a complete (join-closed) element list.
    fn from_elements(
        n_vars: usize,
        monomials: Vec<Monomial>,
        marks: impl Fn(&Monomial) -> (bool, bool),
    ) -> Result<Self> {
        let m = monomials.len();
        let len = m + 1;
        let mut index: HashMap<&Monomial, usize> = HashMap::new();
        for (i, mon) in monomials.iter().enumerate() {
            index.insert(mon, i + 1);
        }
        let mut leq = vec![false; len * len];
        for a in 0..len {
            leq[a * len + a] = true;
        }
        for b in 1..len {
            leq[b] = false;
            leq[0 * len + b] = true; // bottom below everything
        }
        for a in 1..len {
            for b in 1..len {
                if a != b && monomials[a - 1].divides(&monomials[b - 1])? {
                    leq[a * len + b] = true;
                }
            }
        }
        let mut join = vec![0u32; len * len];
        for a in 0..len {
            join[a] = a as u32; // bottom ∨ x = x
            join[a * len] = a as u32;
        }
        for a in 1..len {
            for b in 1..len {
                let j = monomials[a - 1].lcm(&monomials[b - 1])?;
                let idx = *index
                    .get(&j)
                    .ok_or_else(|| Error::Invariant("element set not join closed".into()))?;
                join[a * len + b] = idx as u32;
            }
        }
        // covers: transitive reduction of the order
        let lt = |a: usize, b: usize| a != b && leq[a * len + b];
        let mut covers = vec![];
        for a in 0..len {
            for b in 0..len {
                if lt(a, b) && !(0..len).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a as u32, b as u32));
                }
            }
        }
        let mut numerator_marks = vec![false; len];
        let mut denominator_marks = vec![false; len];
        for (i, mon) in monomials.iter().enumerate() {
            let (num, den) = marks(mon);
            numerator_marks[i + 1] = num;
            denominator_marks[i + 1] = den;
        }
        let lattice = LcmLattice {
            n_vars,
            monomials,
            leq,
            join,
            covers,
            numerator_marks,
            denominator_marks,
        };
        lattice.check_invariants()?;
        Ok(lattice)
    }

    fn check_invariants(&self) -> Result<()> {
        let len = self.len();
        if len < 2 {
            return Err(Error::Invariant("lattice needs at least one monomial".into()));
        }
        // unique maximum among monomial elements
        let tops = (1..len)
            .filter(|&m| (1..len).all(|b| self.leq(b, m)))
            .count();
        if tops != 1 {
            return Err(Error::Invariant("maximum is not unique".into()));
        }
        // every non-bottom element is a join of generator-marked elements
        for m in 1..len {
            let marked: Vec<usize> = (1..len)
                .filter(|&g| {
                    (self.numerator_marks[g] || self.denominator_marks[g]) && self.leq(g, m)
                })
                .collect();
            let join = marked
                .into_iter()
                .fold(0usize, |acc, g| self.join(acc, g));
            if join != m {
                return Err(Error::Invariant(
                    "element is not a join of generators".into(),
                ));
            }
        }
        Ok(())
    }

    /// Total number of elements, bottom included.
    pub fn len(&self) -> usize {
        self.monomials.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_monomials(&self) -> usize {
        self.monomials.len()
    }

    /// The monomial at lattice index `idx` (1-based; 0 is the bottom).
    pub fn monomial(&self, idx: usize) -> Option<&Monomial> {
        if idx == 0 {
            None
        } else {
            self.monomials.get(idx - 1)
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|x| x == m).map(|i| i + 1)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the unique maximal element.
    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Marks: which lattice indices carry a generator of the numerator
    /// (resp. denominator).
    pub fn numerator_marks(&self) -> &[bool] {
        &self.numerator_marks
    }

    pub fn denominator_marks(&self) -> &[bool] {
        &self.denominator_marks
    }

    /// Length of the lattice: one less than the longest maximal chain, i.e.
    /// the longest path in the cover relation starting at the bottom.
    pub fn length(&self) -> usize {
        // canonical order is topological (divisibility refines graded lex)
        let len = self.len();
        let mut height = vec![0usize; len];
        for &(a, b) in &self.covers {
            let (a, b) = (a as usize, b as usize);
            height[b] = height[b].max(height[a] + 1);
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Non-bottom elements that are not the join of two strictly smaller
    /// elements. Also checks that every element is the join of the
    /// join-irreducibles below it.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let len = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let irr: Vec<usize> = (1..len)
            .filter(|&m| {
                !(0..len).any(|a| {
                    lt(a, m) && (0..len).any(|b| lt(b, m) && self.join(a, b) == m)
                })
            })
            .collect();
        for m in 0..len {
            let below: Vec<usize> = irr.iter().copied().filter(|&j| self.leq(j, m)).collect();
            let join = below.into_iter().fold(0usize, |acc, j| self.join(acc, j));
            assert_eq!(
                join, m,
                "element {m} is not the join of its join-irreducibles"
            );
        }
        irr
    }

    /// The order complex of the open interval `(0̂, m)`: vertices are the
    /// elements strictly between, faces are the chains. Returns the complex
    /// together with the lattice indices behind its vertices.
    ///
    /// For an atom the interval is empty and the result is the empty
    /// complex `{∅}`, whose only reduced homology sits in degree -1.
    pub fn open_interval_order_complex(
        &self,
        m: &Monomial,
    ) -> Result<(SimplicialComplex, Vec<usize>)> {
        let target = self
            .index_of(m)
            .ok_or_else(|| Error::NotFound("monomial is not a lattice element".into()))?;
        self.open_interval_order_complex_by_index(target)
    }

    pub fn open_interval_order_complex_by_index(
        &self,
        target: usize,
    ) -> Result<(SimplicialComplex, Vec<usize>)> {
        if target == 0 || target >= self.len() {
            return Err(Error::NotFound("not a non-bottom lattice element".into()));
        }
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let ids: Vec<usize> = (1..self.len()).filter(|&x| lt(x, target)).collect();
        let k = ids.len();
        if k == 0 {
            return Ok((SimplicialComplex::empty_complex(0), ids));
        }
        // maximal chains of the induced subposet, via its cover relation
        let ilt = |a: usize, b: usize| lt(ids[a], ids[b]);
        let mut icovers = vec![vec![]; k];
        for a in 0..k {
            for b in 0..k {
                if ilt(a, b) && !(0..k).any(|c| ilt(a, c) && ilt(c, b)) {
                    icovers[a].push(b);
                }
            }
        }
        let minimal: Vec<usize> = (0..k)
            .filter(|&v| (0..k).all(|u| !ilt(u, v)))
            .collect();
        let mut facets: Vec<Vec<usize>> = vec![];
        let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|v| vec![v]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are non-empty");
            if icovers[last].is_empty() {
                facets.push(chain);
            } else {
                for &next in &icovers[last] {
                    let mut longer = chain.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
        Ok((SimplicialComplex::new(k, facets)?, ids))
    }

    pub fn as_poset(&self) -> FinitePoset {
        FinitePoset::from_leq_fn(self.len(), |a, b| self.leq(a, b))
            .expect("lattice order is a partial order")
    }

    pub fn as_join_semilattice(&self) -> FiniteJoinSemilattice {
        FiniteJoinSemilattice::try_new(self.as_poset())
            .expect("lcm lattice joins are total")
    }

    /// Hasse diagram in DOT format, covers only. Deterministic given the
    /// canonical element order.
    pub fn to_dot(&self, names: Option<&[String]>) -> String {
        let mut out = String::from("digraph lcm_lattice {\n  rankdir=BT;\n");
        out.push_str("  n0 [label=\"0\"];\n");
        for (i, m) in self.monomials.iter().enumerate() {
            out.push_str(&format!(
                "  n{} [label=\"{}\"];\n",
                i + 1,
                crate::io::format_monomial(m, names)
            ));
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let snapshot = LatticeJson {
            variables: self.n_vars,
            elements: self
                .monomials
                .iter()
                .map(|m| m.exponents().to_vec())
                .collect(),
            covers: self.covers.iter().map(|&(a, b)| (a, b)).collect(),
            numerator_generators: (1..self.len())
                .filter(|&i| self.numerator_marks[i])
                .map(|i| i as u32)
                .collect(),
            denominator_generators: (1..self.len())
                .filter(|&i| self.denominator_marks[i])
                .map(|i| i as u32)
                .collect(),
        };
        serde_json::to_string_pretty(&snapshot).expect("lattice snapshot serializes")
    }

    /// Rebuilds a lattice from its JSON export. The order, join table and
    /// covers are recomputed from the element list; the stored covers must
    /// match the recomputed ones.
    pub fn from_json(src: &str) -> Result<LcmLattice> {
        let snapshot: LatticeJson =
            serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let monomials: Vec<Monomial> = snapshot
            .elements
            .iter()
            .map(|e| Monomial::new(e.clone()))
            .collect();
        let mut sorted = monomials.clone();
        sorted.sort();
        if sorted != monomials {
            return Err(Error::Parse("elements not in canonical order".into()));
        }
        let len = monomials.len() + 1;
        let num: Vec<bool> = (0..len)
            .map(|i| snapshot.numerator_generators.contains(&(i as u32)))
            .collect();
        let den: Vec<bool> = (0..len)
            .map(|i| snapshot.denominator_generators.contains(&(i as u32)))
            .collect();
        let lattice = LcmLattice::from_elements(snapshot.variables, monomials, |m| {
            let idx = sorted.iter().position(|x| x == m).unwrap() + 1;
            (num[idx], den[idx])
        })?;
        let stored: Vec<(u32, u32)> = snapshot.covers;
        if stored != lattice.covers {
            return Err(Error::Parse("stored covers disagree with the order".into()));
        }
        Ok(lattice)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    variables: usize,
    elements: Vec<Vec<u64>>,
    covers: Vec<(u32, u32)>,
    numerator_generators: Vec<u32>,
    denominator_generators: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn staircase() -> Quotient {
        let i = MonomialIdeal::from_generators(
            2,
            vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])],
        )
        .unwrap();
        Quotient::ideal(i).unwrap()
    }

    #[test]
    fn staircase_lattice_has_seven_elements() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        assert_eq!(l.len(), 7);
        let expected = vec![
            m(&[0, 2]),
            m(&[1, 1]),
            m(&[2, 0]),
            m(&[1, 2]),
            m(&[2, 1]),
            m(&[2, 2]),
        ];
        assert_eq!(l.monomials(), &expected[..]);
    }

    #[test]
    fn single_generator_lattice() {
        let q = Quotient::ideal(MonomialIdeal::from_generators(1, vec![m(&[1])]).unwrap())
            .unwrap();
        let l = build_lcm_lattice(&q).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.length(), 1);
        assert_eq!(l.join_irreducibles(), vec![1]);
    }

    #[test]
    fn staircase_length_and_irreducibles() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        assert_eq!(l.length(), 3);
        let irr = l.join_irreducibles();
        let irr_mons: Vec<&Monomial> = irr.iter().map(|&i| l.monomial(i).unwrap()).collect();
        assert_eq!(irr_mons, vec![&m(&[0, 2]), &m(&[1, 1]), &m(&[2, 0])]);
    }

    #[test]
    fn staircase_cover_count() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        assert_eq!(l.covers().len(), 9);
    }

    #[test]
    fn chain_lattice_irreducibles_are_all_elements() {
        let i = MonomialIdeal::from_generators(1, vec![m(&[1])]).unwrap();
        let q = Quotient::ring_quotient(i).unwrap();
        // lattice: bottom < 1 < x
        let l = build_lcm_lattice(&q).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
    }

    #[test]
    fn open_interval_examples() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        // below x^2 y: two incomparable points x^2 and x y
        let (cx, ids) = l.open_interval_order_complex(&m(&[2, 1])).unwrap();
        assert_eq!(ids.len(), 2);
        assert_eq!(cx.facets().len(), 2);
        assert_eq!(cx.dim(), Some(0));

        // below an atom: the empty complex
        let (cx, ids) = l.open_interval_order_complex(&m(&[1, 1])).unwrap();
        assert!(ids.is_empty());
        assert_eq!(cx.dim(), Some(-1));

        // below the top: the 4-edge path on 5 vertices
        let (cx, ids) = l.open_interval_order_complex(&m(&[2, 2])).unwrap();
        assert_eq!(ids.len(), 5);
        assert_eq!(cx.facets().len(), 4);
        assert_eq!(cx.dim(), Some(1));

        assert!(l.open_interval_order_complex(&m(&[9, 9])).is_err());
    }

    #[test]
    fn json_roundtrip_is_identity() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        let json = l.to_json();
        let back = LcmLattice::from_json(&json).unwrap();
        assert_eq!(l, back);
    }

    #[test]
    fn dot_export_single_edge() {
        let q = Quotient::ideal(MonomialIdeal::from_generators(1, vec![m(&[1])]).unwrap())
            .unwrap();
        let dot = build_lcm_lattice(&q).unwrap().to_dot(None);
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(dot.matches("label").count(), 2);
    }

    #[test]
    fn join_table_laws() {
        let l = build_lcm_lattice(&staircase()).unwrap();
        let len = l.len();
        for a in 0..len {
            assert_eq!(l.join(a, a), a);
            for b in 0..len {
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.leq(a, b), l.join(a, b) == b);
                for c in 0..len {
                    assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                }
            }
        }
    }
}
