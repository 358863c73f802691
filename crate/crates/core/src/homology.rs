//! Exact simplicial homology over the rationals or a prime field, and the
//! two routes to multigraded Betti numbers of a monomial ideal: reduced
//! homology of upper Koszul complexes, and reduced homology of the open
//! lower intervals of the lcm lattice. Depth and projective dimension are
//! read off the Betti table.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, Quotient};
use crate::lattice::build_lcm_lattice;
use crate::linalg;
use crate::monomial::Monomial;
use crate::simplicial::SimplicialComplex;

/// Coefficient field for homology ranks.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// Dimensions of the reduced homology of a complex, indexed from degree -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedHomology {
    /// `dims[t]` is the dimension in reduced degree `t - 1`.
    dims: Vec<usize>,
}

impl ReducedHomology {
    pub fn dim(&self, degree: i64) -> usize {
        let idx = degree + 1;
        if idx < 0 || idx as usize >= self.dims.len() {
            0
        } else {
            self.dims[idx as usize]
        }
    }

    /// Largest degree carrying nonzero homology, if any.
    pub fn top_nonzero(&self) -> Option<i64> {
        self.dims
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &d)| d > 0)
            .map(|(t, _)| t as i64 - 1)
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Reduced homology dimensions from exact boundary-matrix ranks.
///
/// The void complex has no chain groups at all, so every dimension is zero.
/// The empty complex `{∅}` has one-dimensional homology in degree -1.
pub fn reduced_homology_dims(k: &SimplicialComplex, field: Field) -> Result<ReducedHomology> {
    if k.is_void() {
        return Ok(ReducedHomology { dims: vec![] });
    }
    let faces = k.faces()?;
    // group by size: levels[t] holds the faces with t vertices
    let top = faces
        .last()
        .map(|f| f.count_ones() as usize)
        .unwrap_or(0);
    let mut levels: Vec<Vec<u64>> = vec![vec![]; top + 1];
    for f in faces {
        levels[f.count_ones() as usize].push(f);
    }
    let index: Vec<BTreeMap<u64, usize>> = levels
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, &f)| (f, i))
                .collect::<BTreeMap<_, _>>()
        })
        .collect();

    // boundary ranks: rank_out[t] = rank of ∂ from level t to level t-1
    let mut rank_out = vec![0usize; top + 2];
    for t in 1..=top {
        let rows = levels[t - 1].len();
        let cols = levels[t].len();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut mat: Vec<Vec<i8>> = vec![vec![0; cols]; rows];
        for (c, &face) in levels[t].iter().enumerate() {
            let mut sign = 1i8;
            let mut bits = face;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                let sub = face ^ low;
                let r = index[t - 1][&sub];
                mat[r][c] = sign;
                sign = -sign;
                bits ^= low;
            }
        }
        rank_out[t] = match field {
            Field::Rationals => {
                let big: Vec<Vec<BigInt>> = mat
                    .iter()
                    .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                linalg::rank_bigint(&big)
            }
            Field::Prime(p) => {
                let modp: Vec<Vec<u64>> = mat
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&x| if x < 0 { p - 1 } else { x as u64 })
                            .collect()
                    })
                    .collect();
                linalg::rank_mod_p(&modp, p)
            }
        };
    }
    let dims = (0..=top)
        .map(|t| levels[t].len() - rank_out[t] - rank_out[t + 1])
        .collect();
    Ok(ReducedHomology { dims })
}

/// The upper Koszul complex of `I` at multidegree `a`: faces are the subsets
/// `W` of the support of `a` with `x^a / x_W ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    let n = ideal.n_vars();
    if a.n_vars() != n {
        return Err(Error::DimensionMismatch(n, a.n_vars()));
    }
    let support = a.support();
    if support.len() > 32 {
        return Err(Error::ResourceCap("upper Koszul support too large".into()));
    }
    let mut faces = vec![];
    for pick in 0u64..(1 << support.len()) {
        let mut exps = a.exponents().to_vec();
        let mut vertices = vec![];
        for (bit, &v) in support.iter().enumerate() {
            if pick >> bit & 1 == 1 {
                exps[v] -= 1;
                vertices.push(v);
            }
        }
        if ideal.contains(&Monomial::new(exps))? {
            faces.push(vertices);
        }
    }
    SimplicialComplex::new(n, faces)
}

/// Which module a Betti table describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BettiScope {
    Ideal,
    RingQuotient,
}

/// Nonzero multigraded Betti numbers, keyed by homological index and
/// multidegree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    pub scope: BettiScope,
    pub n_vars: usize,
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn entry(&self, i: usize, degree: &Monomial) -> usize {
        self.entries
            .get(&(i, degree.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, Monomial), &usize)> {
        self.entries.iter()
    }

    /// Total Betti number `b_i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((idx, _), _)| *idx == i)
            .map(|(_, &v)| v)
            .sum()
    }

    /// Largest homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Reindexes a table for `I` into the table for `S/I`:
    /// `b_{i+1, a}(S/I) = b_{i, a}(I)` plus the rank-one entry in degree 0.
    pub fn into_ring_quotient(self) -> BettiTable {
        assert_eq!(self.scope, BettiScope::Ideal);
        let mut entries: BTreeMap<(usize, Monomial), usize> = self
            .entries
            .into_iter()
            .map(|((i, a), v)| ((i + 1, a), v))
            .collect();
        entries.insert((0, Monomial::one(self.n_vars)), 1);
        BettiTable {
            scope: BettiScope::RingQuotient,
            n_vars: self.n_vars,
            entries,
        }
    }
}

fn betti_preconditions(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::Precondition("Betti table of the zero ideal".into()));
    }
    if ideal.is_unit() {
        return Err(Error::Precondition("Betti table of the unit ideal".into()));
    }
    Ok(())
}

/// Multigraded Betti numbers of `I` via upper Koszul complexes:
/// `b_{i,a}(I) = dim H̃_{i-1}(K^a(I))`, with `a` running over the monomial
/// elements of the lcm lattice of `I`.
pub fn multigraded_betti(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    betti_preconditions(ideal)?;
    let lattice = build_lcm_lattice(&Quotient::ideal(ideal.clone())?)?;
    let mut entries = BTreeMap::new();
    for a in lattice.monomials() {
        let koszul = upper_koszul_complex(ideal, a)?;
        let homology = reduced_homology_dims(&koszul, field)?;
        for i in 0.. {
            let degree = i as i64 - 1;
            if degree > homology.top_nonzero().unwrap_or(-2) {
                break;
            }
            let value = homology.dim(degree);
            if value > 0 {
                entries.insert((i, a.clone()), value);
            }
        }
    }
    Ok(BettiTable {
        scope: BettiScope::Ideal,
        n_vars: ideal.n_vars(),
        entries,
    })
}

/// The lattice route: `b_{i,m}(S/I) = dim H̃_{i-2}` of the order complex of
/// the open interval `(0̂, m)` in the lcm lattice, plus `b_{0,0} = 1`.
pub fn betti_via_lcm_lattice(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    betti_preconditions(ideal)?;
    let lattice = build_lcm_lattice(&Quotient::ideal(ideal.clone())?)?;
    let mut entries = BTreeMap::new();
    entries.insert((0, Monomial::one(ideal.n_vars())), 1);
    for idx in 1..lattice.len() {
        let (complex, _) = lattice.open_interval_order_complex_by_index(idx)?;
        let homology = reduced_homology_dims(&complex, field)?;
        let m = lattice.monomial(idx).expect("non-bottom index").clone();
        for i in 1.. {
            let degree = i as i64 - 2;
            if degree > homology.top_nonzero().unwrap_or(-2) {
                break;
            }
            let value = homology.dim(degree);
            if value > 0 {
                entries.insert((i, m.clone()), value);
            }
        }
    }
    Ok(BettiTable {
        scope: BettiScope::RingQuotient,
        n_vars: ideal.n_vars(),
        entries,
    })
}

/// Projective dimension of `S/I` and the depths of `S/I` and `I`, from the
/// Betti table. Both Betti routes are computed and must agree entrywise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DepthSummary {
    pub projective_dimension: usize,
    pub depth_ring_quotient: usize,
    pub depth_ideal: usize,
}

pub fn depth_and_pd(ideal: &MonomialIdeal, field: Field) -> Result<DepthSummary> {
    let via_koszul = multigraded_betti(ideal, field)?.into_ring_quotient();
    let via_lattice = betti_via_lcm_lattice(ideal, field)?;
    if via_koszul != via_lattice {
        return Err(Error::Invariant(
            "the two Betti routes disagree; this is a bug".into(),
        ));
    }
    let n = ideal.n_vars();
    let pd = via_koszul.projective_dimension();
    if pd > n {
        return Err(Error::Invariant(
            "projective dimension exceeds the variable count".into(),
        ));
    }
    Ok(DepthSummary {
        projective_dimension: pd,
        depth_ring_quotient: n - pd,
        depth_ideal: n - pd + 1,
    })
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

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn circle_has_first_homology() {
        let boundary = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let h = reduced_homology_dims(&boundary, Field::Rationals).unwrap();
        assert_eq!(h.dim(-1), 0);
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
    }

    #[test]
    fn two_points_have_reduced_h0() {
        let two = cx(2, &[&[0], &[1]]);
        let h = reduced_homology_dims(&two, Field::Rationals).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(-1), 0);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let s = SimplicialComplex::simplex(4).unwrap();
        let h = reduced_homology_dims(&s, Field::Rationals).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn empty_and_void_conventions() {
        let empty = SimplicialComplex::empty_complex(0);
        let h = reduced_homology_dims(&empty, Field::Rationals).unwrap();
        assert_eq!(h.dim(-1), 1);

        let void = SimplicialComplex::void(0);
        let h = reduced_homology_dims(&void, Field::Rationals).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn prime_field_matches_rationals_on_spheres() {
        let boundary = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let q = reduced_homology_dims(&boundary, Field::Rationals).unwrap();
        let p = reduced_homology_dims(&boundary, Field::Prime(32003)).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn upper_koszul_examples() {
        // I = (xy), a = (1,1): only W = ∅ works
        let i = ideal(2, &[&[1, 1]]);
        let k = upper_koszul_complex(&i, &m(&[1, 1])).unwrap();
        assert_eq!(k.dim(), Some(-1));

        // I = (x), a = (1): x/x = 1 is not in I
        let i = ideal(1, &[&[1]]);
        let k = upper_koszul_complex(&i, &m(&[1])).unwrap();
        assert_eq!(k.dim(), Some(-1));

        // a outside the ideal: void
        let k = upper_koszul_complex(&i, &m(&[0])).unwrap();
        assert!(k.is_void());
    }

    #[test]
    fn principal_ideal_betti() {
        let i = ideal(2, &[&[1, 1]]);
        let t = multigraded_betti(&i, Field::Rationals).unwrap();
        assert_eq!(t.entry(0, &m(&[1, 1])), 1);
        assert_eq!(t.projective_dimension(), 0);
        let sq = t.into_ring_quotient();
        assert_eq!(sq.projective_dimension(), 1);

        let via_lattice = betti_via_lcm_lattice(&i, Field::Rationals).unwrap();
        assert_eq!(via_lattice.entry(1, &m(&[1, 1])), 1);
    }

    #[test]
    fn staircase_betti_and_depth() {
        // (x^2, xy, y^2) in two variables
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let t = multigraded_betti(&i, Field::Rationals).unwrap().into_ring_quotient();
        assert_eq!(t.total(1), 3);
        assert_eq!(t.total(2), 2);
        assert_eq!(t.projective_dimension(), 2);
        assert_eq!(t, betti_via_lcm_lattice(&i, Field::Rationals).unwrap());

        let d = depth_and_pd(&i, Field::Rationals).unwrap();
        assert_eq!(d.projective_dimension, 2);
        assert_eq!(d.depth_ring_quotient, 0);

        // the same ideal in three variables has depth 1
        let i3 = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let d3 = depth_and_pd(&i3, Field::Rationals).unwrap();
        assert_eq!(d3.projective_dimension, 2);
        assert_eq!(d3.depth_ring_quotient, 1);
        assert_eq!(d3.depth_ideal, 2);
    }

    #[test]
    fn principal_depth_is_n_minus_one() {
        let i = ideal(3, &[&[1, 0, 0]]);
        let d = depth_and_pd(&i, Field::Rationals).unwrap();
        assert_eq!(d.depth_ring_quotient, 2);
    }

    #[test]
    fn complete_graph_ideal_depth() {
        // (x_i x_j : i < j) in 4 variables: depth(S/I) = 1
        let mut gens = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                let mut e = vec![0u64; 4];
                e[i] = 1;
                e[j] = 1;
                gens.push(m(&e));
            }
        }
        let i = MonomialIdeal::from_generators(4, gens).unwrap();
        let d = depth_and_pd(&i, Field::Rationals).unwrap();
        assert_eq!(d.projective_dimension, 3);
        assert_eq!(d.depth_ring_quotient, 1);
    }
}
