//! Exact Stanley depth via interval partitions of the characteristic poset.
//!
//! For a proper quotient `I/J` with generator lcm exponent `g`, the
//! characteristic poset holds every multidegree `a ≤ g` with `x^a ∈ I \ J`.
//! A partition of it into boxes `[a, b]` encodes a Stanley decomposition:
//! the box `[a, b]` is the Stanley space `x^a 𝕂[Z_b]` with
//! `Z_b = {x_i : b_i = g_i}`, so its dimension is `rho(b) = #{i : b_i = g_i}`.
//! The Stanley depth is the best achievable minimum of `rho(top)` over a
//! partition, found here by complete backtracking with a verifiable
//! certificate.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Quotient;
use crate::monomial::Monomial;

pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// The finite model of `I/J`: all multidegrees of the box `[0, g]` whose
/// monomials lie in `I` but not in `J`, in graded lexicographic order.
#[derive(Clone, Debug)]
pub struct CharacteristicPoset {
    n: usize,
    g: Vec<u64>,
    points: Vec<Vec<u64>>,
    rho: Vec<usize>,
    index: HashMap<Vec<u64>, usize>,
}

/// Builds the characteristic poset; `g` defaults to the exponent of the lcm
/// of all generators and must dominate it when supplied.
pub fn characteristic_poset(q: &Quotient, g: Option<&Monomial>) -> Result<CharacteristicPoset> {
    characteristic_poset_capped(q, g, DEFAULT_POINT_CAP)
}

pub fn characteristic_poset_capped(
    q: &Quotient,
    g: Option<&Monomial>,
    max_points: usize,
) -> Result<CharacteristicPoset> {
    let n = q.n_vars();
    let mut gens: Vec<&Monomial> = q.numerator().generators().iter().collect();
    gens.extend(q.denominator().generators().iter());
    let default_g: Vec<u64> = (0..n)
        .map(|i| gens.iter().map(|m| m.exponent(i)).max().unwrap_or(0))
        .collect();
    let g: Vec<u64> = match g {
        None => default_g,
        Some(supplied) => {
            if supplied.n_vars() != n {
                return Err(Error::DimensionMismatch(n, supplied.n_vars()));
            }
            if !supplied
                .exponents()
                .iter()
                .zip(&default_g)
                .all(|(&s, &d)| s >= d)
            {
                return Err(Error::Precondition(
                    "g must dominate every generator exponent".into(),
                ));
            }
            supplied.exponents().to_vec()
        }
    };
    let mut box_size: u128 = 1;
    for &gi in &g {
        box_size = box_size.saturating_mul(gi as u128 + 1);
        if box_size > max_points as u128 {
            return Err(Error::ResourceCap(format!(
                "characteristic poset box exceeds {max_points} points"
            )));
        }
    }
    let mut points = vec![];
    for a in box_iter(&vec![0; n], &g) {
        let m = Monomial::new(a.clone());
        if q.numerator().contains(&m)? && !q.denominator().contains(&m)? {
            points.push(a);
        }
    }
    points.sort_by_key(|a| (a.iter().sum::<u64>(), a.clone()));
    let rho = points
        .iter()
        .map(|a| a.iter().zip(&g).filter(|(x, y)| x == y).count())
        .collect();
    let index = points
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();
    if points.is_empty() {
        return Err(Error::Invariant(
            "a proper quotient always has a point below g".into(),
        ));
    }
    Ok(CharacteristicPoset {
        n,
        g,
        points,
        rho,
        index,
    })
}

/// Iterates all integer points of the box `[lo, hi]` in lexicographic order.
fn box_iter(lo: &[u64], hi: &[u64]) -> impl Iterator<Item = Vec<u64>> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let mut cur: Option<Vec<u64>> = Some(lo.clone());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        // advance the mixed-radix counter
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < hi[i] {
                next[i] += 1;
                for (k, v) in next.iter_mut().enumerate().skip(i + 1) {
                    *v = lo[k];
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

impl CharacteristicPoset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> &[u64] {
        &self.g
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn rho(&self, idx: usize) -> usize {
        self.rho[idx]
    }

    pub fn index_of(&self, point: &[u64]) -> Option<usize> {
        self.index.get(point).copied()
    }

    /// Complete search for an interval partition with every `rho(top) ≥ s`.
    ///
    /// The minimum uncovered point (graded lexicographic) must be the bottom
    /// of its interval, so the search branches only over tops. `None` means
    /// no partition exists at threshold `s`, certified by exhaustion.
    pub fn sdepth_decision(
        &self,
        s: usize,
        budget: Option<u64>,
    ) -> Result<Option<StanleyCertificate>> {
        // static feasibility: every point needs some admissible top
        for p in 0..self.len() {
            if !(p..self.len()).any(|b| self.admissible_interval(p, b, s, None)) {
                return Ok(None);
            }
        }
        let mut covered = vec![false; self.len()];
        let mut chosen: Vec<(usize, usize)> = vec![];
        let mut budget = budget;
        if self.cover_search(s, &mut covered, 0, &mut chosen, &mut budget)? {
            let intervals = chosen
                .iter()
                .map(|&(a, b)| Interval {
                    bottom: Monomial::new(self.points[a].clone()),
                    top: Monomial::new(self.points[b].clone()),
                })
                .collect::<Vec<_>>();
            let value = chosen
                .iter()
                .map(|&(_, b)| self.rho[b])
                .min()
                .expect("nonempty poset yields intervals");
            let cert = StanleyCertificate {
                value,
                g: Monomial::new(self.g.clone()),
                intervals,
            };
            debug_assert!(verify_certificate(self, &cert));
            Ok(Some(cert))
        } else {
            Ok(None)
        }
    }

    /// Checks `rho(top) ≥ s`, `bottom ≤ top`, and that the whole box lies in
    /// the poset and (when given) avoids covered points. Returns false
    /// instead of erroring: used as the branching filter.
    fn admissible_interval(
        &self,
        bottom: usize,
        top: usize,
        s: usize,
        covered: Option<&[bool]>,
    ) -> bool {
        if self.rho[top] < s {
            return false;
        }
        let (lo, hi) = (&self.points[bottom], &self.points[top]);
        if !lo.iter().zip(hi).all(|(a, b)| a <= b) {
            return false;
        }
        for c in box_iter(lo, hi) {
            match self.index.get(&c) {
                None => return false,
                Some(&idx) => {
                    if covered.is_some_and(|cov| cov[idx]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn box_indices(&self, bottom: usize, top: usize) -> Vec<usize> {
        box_iter(&self.points[bottom], &self.points[top])
            .map(|c| self.index[&c])
            .collect()
    }

    fn cover_search(
        &self,
        s: usize,
        covered: &mut Vec<bool>,
        covered_count: usize,
        chosen: &mut Vec<(usize, usize)>,
        budget: &mut Option<u64>,
    ) -> Result<bool> {
        if covered_count == self.len() {
            return Ok(true);
        }
        if let Some(b) = budget {
            if *b == 0 {
                return Err(Error::BudgetExhausted("interval partition search".into()));
            }
            *b -= 1;
        }
        let a = covered
            .iter()
            .position(|&c| !c)
            .expect("count < len means an uncovered point");
        for b in a..self.len() {
            if covered[b] || !self.admissible_interval(a, b, s, Some(covered)) {
                continue;
            }
            let ids = self.box_indices(a, b);
            for &i in &ids {
                covered[i] = true;
            }
            chosen.push((a, b));
            if self.cover_search(s, covered, covered_count + ids.len(), chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
            for &i in &ids {
                covered[i] = false;
            }
        }
        Ok(false)
    }
}

/// A closed box `[bottom, top]` of the characteristic poset.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub bottom: Monomial,
    pub top: Monomial,
}

/// A verified Stanley decomposition in poset form: disjoint intervals whose
/// union is the whole poset; `value` is the minimum of `rho(top)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StanleyCertificate {
    pub value: usize,
    pub g: Monomial,
    pub intervals: Vec<Interval>,
}

impl StanleyCertificate {
    /// The Stanley spaces `(x^a, Z)` encoded by the intervals: for the box
    /// `[a, b]` the free variable set is `{i : b_i = g_i}`.
    pub fn stanley_spaces(&self) -> Vec<(Monomial, Vec<usize>)> {
        self.intervals
            .iter()
            .map(|iv| {
                let z = iv
                    .top
                    .exponents()
                    .iter()
                    .zip(self.g.exponents())
                    .enumerate()
                    .filter(|(_, (t, g))| t == g)
                    .map(|(i, _)| i)
                    .collect();
                (iv.bottom.clone(), z)
            })
            .collect()
    }
}

/// Independent certificate check: interval closure inside the poset, exact
/// disjoint cover, and the stated value. Shares no state with the search.
pub fn verify_certificate(p: &CharacteristicPoset, c: &StanleyCertificate) -> bool {
    if c.g.exponents() != p.g() {
        return false;
    }
    let mut seen = vec![false; p.len()];
    let mut min_rho = usize::MAX;
    for iv in &c.intervals {
        let (lo, hi) = (iv.bottom.exponents(), iv.top.exponents());
        if lo.len() != p.n_vars() || hi.len() != p.n_vars() {
            return false;
        }
        if !lo.iter().zip(hi).all(|(a, b)| a <= b) {
            return false;
        }
        let top_idx = match p.index_of(hi) {
            Some(i) => i,
            None => return false,
        };
        min_rho = min_rho.min(p.rho(top_idx));
        for point in box_iter(&lo.to_vec(), &hi.to_vec()) {
            match p.index_of(&point) {
                None => return false,
                Some(i) => {
                    if seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
            }
        }
    }
    seen.iter().all(|&s| s) && min_rho == c.value
}

/// Options for [`sdepth_with_options`].
#[derive(Clone, Debug, Default)]
pub struct SdepthOptions {
    /// Degree box; defaults to the generator lcm exponent.
    pub g: Option<Monomial>,
    /// Cap on poset points (default 10^6).
    pub max_points: Option<usize>,
    /// Deterministic node budget applied to each threshold's search.
    pub node_budget: Option<u64>,
}

/// Exact Stanley depth with a certificate, trying thresholds from `n`
/// downwards. The threshold-0 partition into singletons always exists, so
/// the descent terminates.
pub fn sdepth_exact(q: &Quotient) -> Result<StanleyCertificate> {
    sdepth_with_options(q, &SdepthOptions::default())
}

pub fn sdepth_with_options(q: &Quotient, opts: &SdepthOptions) -> Result<StanleyCertificate> {
    let poset = characteristic_poset_capped(
        q,
        opts.g.as_ref(),
        opts.max_points.unwrap_or(DEFAULT_POINT_CAP),
    )?;
    for s in (0..=q.n_vars()).rev() {
        if let Some(cert) = poset.sdepth_decision(s, opts.node_budget)? {
            return Ok(cert);
        }
    }
    Err(Error::Invariant(
        "threshold 0 always admits the singleton partition".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().map(|g| m(g)).collect()).unwrap()
    }

    fn complete_graph_ideal(n: usize) -> MonomialIdeal {
        let mut gens = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let mut e = vec![0u64; n];
                e[i] = 1;
                e[j] = 1;
                gens.push(Monomial::new(e));
            }
        }
        MonomialIdeal::from_generators(n, gens).unwrap()
    }

    #[test]
    fn characteristic_poset_examples() {
        // (x, y, z)/0 with g = (1,1,1): the seven nonzero 0/1 vectors
        let q = Quotient::ideal(ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let p = characteristic_poset(&q, Some(&m(&[1, 1, 1]))).unwrap();
        assert_eq!(p.len(), 7);

        // S/(x_i x_j : i<j) with n = 3: the origin and the unit vectors
        let q = Quotient::ring_quotient(complete_graph_ideal(3)).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.points()[0], vec![0, 0, 0]);

        // (x^2, xy, y^2)/0 with g = (2,2): the six points of degree >= 2
        let q = Quotient::ideal(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn g_must_dominate_generators() {
        let q = Quotient::ideal(ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(characteristic_poset(&q, Some(&m(&[1, 2]))).is_err());
    }

    #[test]
    fn decision_examples() {
        // sdepth(S/(x1)) = n - 1
        let q = Quotient::ring_quotient(ideal(3, &[&[1, 0, 0]])).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        assert!(p.sdepth_decision(2, None).unwrap().is_some());

        // Example family: sdepth(S/(x_i x_j : i<j)) = 1 for n = 4
        let q = Quotient::ring_quotient(complete_graph_ideal(4)).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        assert!(p.sdepth_decision(2, None).unwrap().is_none());
        let cert = p.sdepth_decision(1, None).unwrap().unwrap();
        assert!(verify_certificate(&p, &cert));

        // sdepth((x, y, z)) = 2
        let q = Quotient::ideal(ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        let cert = p.sdepth_decision(2, None).unwrap().unwrap();
        assert!(verify_certificate(&p, &cert));
        assert_eq!(cert.value, 2);
        assert!(p.sdepth_decision(3, None).unwrap().is_none());
    }

    #[test]
    fn sdepth_exact_examples() {
        // principal ideals have sdepth n
        let q = Quotient::ideal(ideal(3, &[&[1, 0, 0]])).unwrap();
        assert_eq!(sdepth_exact(&q).unwrap().value, 3);

        // S/(x_i x_j) with n = 3
        let q = Quotient::ring_quotient(complete_graph_ideal(3)).unwrap();
        assert_eq!(sdepth_exact(&q).unwrap().value, 1);

        // (x^2, xy, y^2) in three variables
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]);
        let cert = sdepth_exact(&Quotient::ideal(i).unwrap()).unwrap();
        assert_eq!(cert.value, 2);
    }

    #[test]
    fn tampered_certificates_fail() {
        let q = Quotient::ideal(ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let p = characteristic_poset(&q, None).unwrap();
        let cert = sdepth_exact(&q).unwrap();
        assert!(verify_certificate(&p, &cert));

        // drop an interval: no longer a cover
        let mut short = cert.clone();
        short.intervals.pop();
        assert!(!verify_certificate(&p, &short));

        // duplicate an interval: overlap
        let mut doubled = cert.clone();
        doubled.intervals.push(doubled.intervals[0].clone());
        assert!(!verify_certificate(&p, &doubled));
    }

    #[test]
    fn free_variable_shift_adds_one() {
        let q = Quotient::ideal(ideal(1, &[&[1]])).unwrap();
        assert_eq!(sdepth_exact(&q).unwrap().value, 1);
        let shifted = q.free_variable_shift();
        assert_eq!(sdepth_exact(&shifted).unwrap().value, 2);
        let twice = shifted.free_variable_shift();
        assert_eq!(sdepth_exact(&twice).unwrap().value, 3);
    }

    #[test]
    fn g_enlargement_keeps_sdepth() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let q = Quotient::ideal(i).unwrap();
        let base = sdepth_exact(&q).unwrap().value;
        for bump in [m(&[3, 2]), m(&[2, 3]), m(&[3, 3])] {
            let opts = SdepthOptions {
                g: Some(bump),
                ..Default::default()
            };
            assert_eq!(sdepth_with_options(&q, &opts).unwrap().value, base);
        }
    }

    #[test]
    fn stanley_spaces_read_off_the_box() {
        let q = Quotient::ring_quotient(ideal(2, &[&[1, 0]])).unwrap();
        let cert = sdepth_exact(&q).unwrap();
        let spaces = cert.stanley_spaces();
        assert_eq!(spaces.len(), 1);
        // S/(x): the single space 1·K[y]
        assert_eq!(spaces[0].0, m(&[0, 0]));
        assert_eq!(spaces[0].1, vec![1]);
    }
}
