//! Finite posets, exact order dimension via realizer search, grid
//! embeddings, and the join-preserving transfer maps between a finite
//! join-semilattice and the subsemilattice of `ℕ^d` generated by an
//! embedded image.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset on elements `0..n`, stored as the full order relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from the relation matrix, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn new(n: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != n * n {
            return Err(Error::Precondition(format!(
                "relation matrix must have {} entries",
                n * n
            )));
        }
        let p = FinitePoset { n, leq };
        for a in 0..n {
            if !p.leq(a, a) {
                return Err(Error::Invariant(format!("relation not reflexive at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && p.leq(a, b) && p.leq(b, a) {
                    return Err(Error::Invariant(format!(
                        "relation not antisymmetric at ({a}, {b})"
                    )));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) && !p.leq(a, c) {
                        return Err(Error::Invariant(format!(
                            "relation not transitive at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn from_leq_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = f(a, b);
            }
        }
        FinitePoset::new(n, leq)
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        FinitePoset::from_leq_fn(n, |a, b| a <= b).expect("chain is a poset")
    }

    /// An antichain on `n` elements.
    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_leq_fn(n, |a, b| a == b).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// All unordered incomparable pairs `{a, b}` with `a < b` as indices.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.leq(a, b) && !self.leq(b, a) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relations, i.e. the transitive reduction of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Whether `perm` lists all elements in an order that respects the poset.
    pub fn is_linear_extension(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let mut position = vec![usize::MAX; self.n];
        for (pos, &e) in perm.iter().enumerate() {
            if e >= self.n || position[e] != usize::MAX {
                return false;
            }
            position[e] = pos;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && position[a] > position[b] {
                    return false;
                }
            }
        }
        true
    }

    /// The poset with elements renamed by `perm` (element `i` becomes
    /// `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<FinitePoset> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length mismatch".into()));
        }
        FinitePoset::from_leq_fn(self.n, |a, b| {
            let ia = perm.iter().position(|&x| x == a).unwrap();
            let ib = perm.iter().position(|&x| x == b).unwrap();
            self.leq(ia, ib)
        })
    }

    /// Adds a new global minimum as element `n`.
    pub fn with_new_bottom(&self) -> FinitePoset {
        let n = self.n + 1;
        FinitePoset::from_leq_fn(n, |a, b| {
            if a == self.n {
                true
            } else if b == self.n {
                false
            } else {
                self.leq(a, b)
            }
        })
        .expect("bottom augmentation keeps the axioms")
    }
}

/// A realizer: `d` linear extensions whose intersection is exactly the poset
/// order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Realizer {
    pub extensions: Vec<Vec<usize>>,
}

impl Realizer {
    /// Validates both realizer invariants against `p`.
    pub fn new(p: &FinitePoset, extensions: Vec<Vec<usize>>) -> Result<Self> {
        let r = Realizer { extensions };
        if !r.is_valid_for(p) {
            return Err(Error::Invariant(
                "extensions do not form a realizer of the poset".into(),
            ));
        }
        Ok(r)
    }

    pub fn d(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_valid_for(&self, p: &FinitePoset) -> bool {
        if self.extensions.is_empty() {
            return p.len() <= 1;
        }
        let n = p.len();
        let mut positions = vec![];
        for ext in &self.extensions {
            if !p.is_linear_extension(ext) {
                return false;
            }
            let mut pos = vec![0usize; n];
            for (i, &e) in ext.iter().enumerate() {
                pos[e] = i;
            }
            positions.push(pos);
        }
        // intersection of the linear orders must equal the poset order
        for a in 0..n {
            for b in 0..n {
                let all_before = positions.iter().all(|pos| pos[a] <= pos[b]);
                if all_before != p.leq(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// An order embedding into `ℕ^d`: `p ≤ q` iff the coordinate vectors compare
/// componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEmbedding {
    pub d: usize,
    pub coordinates: Vec<Vec<u64>>,
}

impl GridEmbedding {
    pub fn coordinate(&self, element: usize) -> &[u64] {
        &self.coordinates[element]
    }
}

fn vec_leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn vec_join(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Checks the embedding biconditional on every ordered pair.
pub fn verify_embedding(p: &FinitePoset, e: &GridEmbedding) -> bool {
    if e.coordinates.len() != p.len() {
        return false;
    }
    if e.coordinates.iter().any(|c| c.len() != e.d) {
        return false;
    }
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.leq(a, b) != vec_leq(&e.coordinates[a], &e.coordinates[b]) {
                return false;
            }
        }
    }
    true
}

/// Reads coordinates off a realizer: element `p` gets, in coordinate `k`,
/// its rank inside extension `k`.
pub fn embed_from_realizer(p: &FinitePoset, r: &Realizer) -> Result<GridEmbedding> {
    if !r.is_valid_for(p) {
        return Err(Error::Invariant("realizer does not realize the poset".into()));
    }
    let d = r.extensions.len().max(1);
    let mut coordinates = vec![vec![0u64; d]; p.len()];
    if r.extensions.is_empty() {
        // single element, embed at the origin of ℕ^1
        let e = GridEmbedding { d, coordinates };
        return Ok(e);
    }
    for (k, ext) in r.extensions.iter().enumerate() {
        for (rank, &elem) in ext.iter().enumerate() {
            coordinates[elem][k] = rank as u64;
        }
    }
    let e = GridEmbedding { d, coordinates };
    if !verify_embedding(p, &e) {
        return Err(Error::Invariant(
            "realizer coordinates failed the embedding biconditional".into(),
        ));
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Order dimension search
// ---------------------------------------------------------------------------

/// Options for [`order_dimension_with`].
#[derive(Clone, Copy, Debug)]
pub struct DimOptions {
    /// Largest dimension tried before giving up with
    /// [`Error::DimBoundExceeded`].
    pub d_max: usize,
    /// Deterministic cap on search nodes; `None` means unbounded.
    pub node_budget: Option<u64>,
}

impl Default for DimOptions {
    fn default() -> Self {
        DimOptions {
            d_max: 6,
            node_budget: None,
        }
    }
}

/// Exact order dimension with default options (`d_max = 6`, no budget).
///
/// Returns the minimal `d` together with a verified realizer. For `d ≥ 2`
/// the search at `d - 1` is a complete refutation: every assignment of the
/// ordered incomparable pairs to `d - 1` extension buckets was ruled out.
pub fn order_dimension(p: &FinitePoset) -> Result<(usize, Realizer)> {
    order_dimension_with(p, DimOptions::default())
}

pub fn order_dimension_with(p: &FinitePoset, opts: DimOptions) -> Result<(usize, Realizer)> {
    if p.is_empty() {
        return Err(Error::Precondition("order dimension of the empty poset".into()));
    }
    if opts.d_max == 0 {
        return Err(Error::Precondition("d_max must be positive".into()));
    }
    let mut budget = opts.node_budget;
    for d in 1..=opts.d_max {
        if let Some(extensions) = realizer_search(p, d, &mut budget)? {
            let realizer = Realizer::new(p, extensions)?;
            return Ok((d, realizer));
        }
    }
    Err(Error::DimBoundExceeded { d_max: opts.d_max })
}

/// Row-major bit matrix with one u64 block row stride.
#[derive(Clone)]
struct BitMat {
    blocks: usize,
    rows: Vec<u64>,
}

impl BitMat {
    fn new(n: usize) -> Self {
        let blocks = n.div_ceil(64);
        BitMat {
            blocks,
            rows: vec![0; n * blocks],
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r * self.blocks + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize) {
        self.rows[r * self.blocks + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.rows[r * self.blocks..(r + 1) * self.blocks]
    }

    fn or_into_row(&mut self, r: usize, other: &[u64]) {
        let base = r * self.blocks;
        for (i, &w) in other.iter().enumerate() {
            self.rows[base + i] |= w;
        }
    }
}

/// One extension bucket: the transitive closure of (poset order ∪ assigned
/// arcs), kept as successor and predecessor bit matrices.
#[derive(Clone)]
struct Bucket {
    succ: BitMat,
    pred: BitMat,
    used: bool,
}

impl Bucket {
    fn from_poset(p: &FinitePoset) -> Self {
        let n = p.len();
        let mut succ = BitMat::new(n);
        let mut pred = BitMat::new(n);
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) {
                    succ.set(a, b);
                    pred.set(b, a);
                }
            }
        }
        Bucket {
            succ,
            pred,
            used: false,
        }
    }

    /// `a` strictly below `b` in this bucket's current order.
    #[inline]
    fn below(&self, a: usize, b: usize) -> bool {
        self.succ.get(a, b)
    }

    /// Inserts the arc `a -> b` and closes transitively. The caller must
    /// have checked that `b -> a` is not already present.
    fn add_arc(&mut self, a: usize, b: usize, n: usize) {
        debug_assert!(!self.below(b, a));
        let mut below_a: Vec<u64> = self.pred.row(a).to_vec();
        below_a[a / 64] |= 1 << (a % 64);
        let mut above_b: Vec<u64> = self.succ.row(b).to_vec();
        above_b[b / 64] |= 1 << (b % 64);
        for x in 0..n {
            if below_a[x / 64] >> (x % 64) & 1 == 1 {
                self.succ.or_into_row(x, &above_b);
            }
        }
        for y in 0..n {
            if above_b[y / 64] >> (y % 64) & 1 == 1 {
                self.pred.or_into_row(y, &below_a);
            }
        }
        self.used = true;
    }

    /// Deterministic topological order: repeatedly emit the smallest element
    /// all of whose remaining predecessors are emitted.
    fn linear_extension(&self, n: usize) -> Vec<usize> {
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&v| {
                    !placed[v] && (0..n).all(|u| placed[u] || !self.pred.get(v, u))
                })
                .expect("bucket order is acyclic");
            placed[next] = true;
            out.push(next);
        }
        out
    }
}

/// Complete backtracking search for a `d`-bucket covering of the ordered
/// incomparable pairs. Each ordered pair `(a, b)` must end up with `a`
/// below `b` in at least one bucket; each bucket must stay acyclic.
///
/// Propagation: pairs already ordered inside some bucket are covered for
/// free; a pair whose reverse is forced everywhere fails; a pair with one
/// remaining bucket is assigned immediately. Branching picks the pair with
/// the fewest allowed buckets. Buckets are interchangeable until first use,
/// so at most one fresh bucket is tried per branch point.
fn realizer_search(
    p: &FinitePoset,
    d: usize,
    budget: &mut Option<u64>,
) -> Result<Option<Vec<Vec<usize>>>> {
    let n = p.len();
    let mut pairs = vec![];
    for (a, b) in p.incomparable_pairs() {
        pairs.push((a, b));
        pairs.push((b, a));
    }
    let buckets: Vec<Bucket> = (0..d).map(|_| Bucket::from_poset(p)).collect();
    let outcome = cover_pairs(n, d, &pairs, buckets, budget)?;
    Ok(outcome.map(|buckets| {
        buckets
            .iter()
            .map(|bucket| bucket.linear_extension(n))
            .collect()
    }))
}

fn cover_pairs(
    n: usize,
    d: usize,
    pending: &[(usize, usize)],
    mut buckets: Vec<Bucket>,
    budget: &mut Option<u64>,
) -> Result<Option<Vec<Bucket>>> {
    if let Some(b) = budget {
        if *b == 0 {
            return Err(Error::BudgetExhausted("realizer search".into()));
        }
        *b -= 1;
    }

    // propagate to a fixpoint
    let mut pending: Vec<(usize, usize)> = pending.to_vec();
    loop {
        let mut forced: Option<(usize, usize, usize)> = None;
        let mut next_pending = Vec::with_capacity(pending.len());
        for &(a, b) in &pending {
            if buckets.iter().any(|bk| bk.below(a, b)) {
                continue; // covered
            }
            let allowed: Vec<usize> = (0..d).filter(|&k| !buckets[k].below(b, a)).collect();
            match allowed.len() {
                0 => return Ok(None),
                1 if forced.is_none() => {
                    forced = Some((a, b, allowed[0]));
                    next_pending.push((a, b));
                }
                _ => next_pending.push((a, b)),
            }
        }
        pending = next_pending;
        match forced {
            Some((a, b, k)) => {
                buckets[k].add_arc(a, b, n);
                pending.retain(|&(x, y)| !(x == a && y == b));
            }
            None => break,
        }
    }

    if pending.is_empty() {
        return Ok(Some(buckets));
    }

    // most-constrained pair first; ties resolved by list order (canonical)
    let mut best_idx = 0;
    let mut best_allowed: Vec<usize> = vec![];
    let mut best_count = usize::MAX;
    for (idx, &(a, b)) in pending.iter().enumerate() {
        let allowed: Vec<usize> = (0..d).filter(|&k| !buckets[k].below(b, a)).collect();
        if allowed.len() < best_count {
            best_count = allowed.len();
            best_idx = idx;
            best_allowed = allowed;
            if best_count <= 2 {
                break;
            }
        }
    }
    let (a, b) = pending[best_idx];
    let mut rest = pending.clone();
    rest.swap_remove(best_idx);

    let mut tried_fresh = false;
    for k in best_allowed {
        if buckets[k].used {
            // fall through: always try used buckets
        } else if tried_fresh {
            continue;
        } else {
            tried_fresh = true;
        }
        let mut next = buckets.clone();
        next[k].add_arc(a, b, n);
        if let Some(solution) = cover_pairs(n, d, &rest, next, budget)? {
            return Ok(Some(solution));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Join semilattices in the grid and the transfer maps
// ---------------------------------------------------------------------------

/// A finite set of points of `ℕ^d` closed under componentwise maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSemilattice {
    d: usize,
    points: Vec<Vec<u64>>,
}

impl GridSemilattice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &[u64]) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// The induced poset (componentwise order).
    pub fn as_poset(&self) -> FinitePoset {
        FinitePoset::from_leq_fn(self.points.len(), |a, b| {
            vec_leq(&self.points[a], &self.points[b])
        })
        .expect("componentwise order is a partial order")
    }
}

/// Closure of a point set under componentwise maximum, by fixed-point
/// iteration over pairs.
pub fn join_closure_in_grid(points: &[Vec<u64>], cap: usize) -> Result<GridSemilattice> {
    if points.is_empty() {
        return Err(Error::Precondition("join closure of an empty set".into()));
    }
    let d = points[0].len();
    for pt in points {
        if pt.len() != d {
            return Err(Error::DimensionMismatch(d, pt.len()));
        }
    }
    let mut pts: Vec<Vec<u64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    loop {
        let before = pts.len();
        let mut fresh = vec![];
        for i in 0..before {
            for j in i + 1..before {
                let join = vec_join(&pts[i], &pts[j]);
                if pts.binary_search(&join).is_err() && !fresh.contains(&join) {
                    fresh.push(join);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        pts.extend(fresh);
        if pts.len() > cap {
            return Err(Error::ResourceCap(format!(
                "grid join closure exceeds {cap} points"
            )));
        }
        pts.sort();
        pts.dedup();
    }
    Ok(GridSemilattice { d, points: pts })
}

/// A finite join-semilattice on elements `0..n`: a poset in which every pair
/// has a least upper bound, stored as an explicit join table.
#[derive(Clone, Debug)]
pub struct FiniteJoinSemilattice {
    poset: FinitePoset,
    join: Vec<u32>,
}

impl FiniteJoinSemilattice {
    /// Checks that every pair of elements has a unique least upper bound.
    pub fn try_new(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let uppers: Vec<usize> = (0..n)
                    .filter(|&c| poset.leq(a, c) && poset.leq(b, c))
                    .collect();
                let least = uppers
                    .iter()
                    .copied()
                    .find(|&c| uppers.iter().all(|&u| poset.leq(c, u)));
                match least {
                    Some(c) => join[a * n + b] = c as u32,
                    None => {
                        return Err(Error::Precondition(format!(
                            "elements {a} and {b} have no join"
                        )))
                    }
                }
            }
        }
        Ok(FiniteJoinSemilattice { poset, join })
    }

    pub fn from_grid(grid: &GridSemilattice) -> Self {
        let poset = grid.as_poset();
        let n = poset.len();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let j = vec_join(&grid.points()[a], &grid.points()[b]);
                join[a * n + b] = grid
                    .index_of(&j)
                    .expect("grid semilattice is join closed") as u32;
            }
        }
        FiniteJoinSemilattice { poset, join }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.len() + b] as usize
    }

    pub fn join_of(&self, elems: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut it = elems.into_iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, e| self.join(acc, e)))
    }

    /// Elements that are not the join of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&m| {
                !(0..n).any(|a| {
                    self.poset.lt(a, m)
                        && (0..n).any(|b| self.poset.lt(b, m) && self.join(a, b) == m)
                })
            })
            .collect()
    }
}

/// An explicit surjective join-preserving map from a grid semilattice onto a
/// finite join-semilattice.
#[derive(Clone, Debug)]
pub struct JoinPreservingMap {
    pub domain: GridSemilattice,
    /// `values[i]` is the image of `domain.points()[i]`.
    pub values: Vec<usize>,
}

impl JoinPreservingMap {
    /// Validates surjectivity and join preservation onto `target`.
    pub fn new(
        domain: GridSemilattice,
        values: Vec<usize>,
        target: &FiniteJoinSemilattice,
    ) -> Result<Self> {
        let map = JoinPreservingMap { domain, values };
        map.validate(target)?;
        Ok(map)
    }

    fn validate(&self, target: &FiniteJoinSemilattice) -> Result<()> {
        if self.values.len() != self.domain.len() {
            return Err(Error::Precondition("value table length mismatch".into()));
        }
        let mut hit = vec![false; target.len()];
        for &v in &self.values {
            if v >= target.len() {
                return Err(Error::Precondition("value out of range".into()));
            }
            hit[v] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(Error::Precondition("map is not surjective".into()));
        }
        let pts = self.domain.points();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let join = vec_join(&pts[i], &pts[j]);
                let k = self
                    .domain
                    .index_of(&join)
                    .ok_or_else(|| Error::Precondition("domain not join closed".into()))?;
                if self.values[k] != target.join(self.values[i], self.values[j]) {
                    return Err(Error::Precondition(format!(
                        "map does not preserve the join of points {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the canonical join-preserving surjection `φ` from the grid closure
/// of an embedded image back onto the semilattice.
///
/// Given a valid embedding `j` of `L` into `ℕ^d`, let `L'` be the join
/// closure of the image. Then `φ(x') = ⋁ {x ∈ L : j(x) ≤ x'}`. The returned
/// map is checked to be surjective, monotone and join-preserving, with
/// `φ∘j = id` and `j(φ(x')) ≥ x'` for every `x'`.
pub fn phi_from_embedding(
    l: &FiniteJoinSemilattice,
    e: &GridEmbedding,
) -> Result<JoinPreservingMap> {
    if l.is_empty() {
        return Err(Error::Precondition("empty semilattice".into()));
    }
    if !verify_embedding(l.poset(), e) {
        return Err(Error::Invariant(
            "map is not an embedding of the semilattice".into(),
        ));
    }
    let closure = join_closure_in_grid(&e.coordinates, 1_000_000)?;
    let mut values = Vec::with_capacity(closure.len());
    for x_prime in closure.points() {
        let below: Vec<usize> = (0..l.len())
            .filter(|&x| vec_leq(&e.coordinates[x], x_prime))
            .collect();
        let image = l
            .join_of(below.iter().copied())
            .ok_or_else(|| Error::Invariant("closure point with empty fibre".into()))?;
        values.push(image);
    }
    let map = JoinPreservingMap::new(closure, values, l)?;

    // φ∘j = id
    for x in 0..l.len() {
        let idx = map
            .domain
            .index_of(&e.coordinates[x])
            .ok_or_else(|| Error::Invariant("image point missing from closure".into()))?;
        if map.values[idx] != x {
            return Err(Error::Invariant("phi does not invert the embedding".into()));
        }
    }
    // j(φ(x')) ≥ x'
    for (i, x_prime) in map.domain.points().iter().enumerate() {
        if !vec_leq(x_prime, &e.coordinates[map.values[i]]) {
            return Err(Error::Invariant(
                "phi violates the dominance inequality".into(),
            ));
        }
    }
    // monotone
    for i in 0..map.domain.len() {
        for j in 0..map.domain.len() {
            if vec_leq(&map.domain.points()[i], &map.domain.points()[j])
                && !l.poset().leq(map.values[i], map.values[j])
            {
                return Err(Error::Invariant("phi is not monotone".into()));
            }
        }
    }
    Ok(map)
}

/// The reverse construction: from a surjective join-preserving map
/// `φ : L' → L`, the map `a ↦ ⋁ φ^{-1}(a)` is an embedding of `L` into
/// `ℕ^d`. Verified before returning.
pub fn phi_dagger(
    l: &FiniteJoinSemilattice,
    phi: &JoinPreservingMap,
) -> Result<GridEmbedding> {
    phi.validate(l)?;
    let d = phi.domain.d();
    let mut coordinates = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let mut fibre_join: Option<Vec<u64>> = None;
        for (i, pt) in phi.domain.points().iter().enumerate() {
            if phi.values[i] == a {
                fibre_join = Some(match fibre_join {
                    None => pt.clone(),
                    Some(acc) => vec_join(&acc, pt),
                });
            }
        }
        coordinates.push(fibre_join.expect("surjectivity was validated"));
    }
    let e = GridEmbedding { d, coordinates };
    if !verify_embedding(l.poset(), &e) {
        return Err(Error::Invariant(
            "fibre joins failed the embedding biconditional".into(),
        ));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_axioms_are_checked() {
        // not antisymmetric
        assert!(FinitePoset::new(2, vec![true, true, true, true]).is_err());
        // not transitive
        let mut leq = vec![false; 9];
        for i in 0..3 {
            leq[i * 3 + i] = true;
        }
        leq[0 * 3 + 1] = true;
        leq[1 * 3 + 2] = true;
        assert!(FinitePoset::new(3, leq).is_err());
    }

    #[test]
    fn incomparable_pairs_examples() {
        assert!(FinitePoset::chain(3).incomparable_pairs().is_empty());
        assert_eq!(FinitePoset::antichain(2).incomparable_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn dimension_of_chains_and_antichains() {
        for n in 1..5 {
            let (d, r) = order_dimension(&FinitePoset::chain(n)).unwrap();
            assert_eq!(d, 1);
            assert!(r.is_valid_for(&FinitePoset::chain(n)));
        }
        let (d, _) = order_dimension(&FinitePoset::antichain(2)).unwrap();
        assert_eq!(d, 2);
        let (d, _) = order_dimension(&FinitePoset::antichain(5)).unwrap();
        assert_eq!(d, 2);
    }

    #[test]
    fn dimension_of_standard_example_s3() {
        // atoms a_i, coatoms A_j = complement of {j}; a_i < A_j iff i != j
        let p = FinitePoset::from_leq_fn(6, |a, b| {
            if a == b {
                return true;
            }
            a < 3 && b >= 3 && a != b - 3
        })
        .unwrap();
        let (d, r) = order_dimension(&p).unwrap();
        assert_eq!(d, 3);
        assert!(r.is_valid_for(&p));
    }

    #[test]
    fn dimension_of_boolean_lattice_b3() {
        let p = FinitePoset::from_leq_fn(8, |a, b| a & b == a).unwrap();
        let (d, _) = order_dimension(&p).unwrap();
        assert_eq!(d, 3);
    }

    #[test]
    fn bound_exceeded_reports_cleanly() {
        let p = FinitePoset::antichain(3);
        let err = order_dimension_with(
            &p,
            DimOptions {
                d_max: 1,
                node_budget: None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimBoundExceeded { d_max: 1 }));
    }

    #[test]
    fn embedding_from_realizer_chain() {
        let p = FinitePoset::chain(3);
        let (_, r) = order_dimension(&p).unwrap();
        let e = embed_from_realizer(&p, &r).unwrap();
        assert_eq!(e.coordinates, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn constant_map_is_not_an_embedding() {
        let p = FinitePoset::antichain(2);
        let e = GridEmbedding {
            d: 2,
            coordinates: vec![vec![0, 0], vec![0, 0]],
        };
        assert!(!verify_embedding(&p, &e));
    }

    #[test]
    fn join_closure_examples() {
        let c = join_closure_in_grid(&[vec![1, 0], vec![0, 1]], 100).unwrap();
        assert_eq!(c.points(), &[vec![0, 1], vec![1, 0], vec![1, 1]]);

        let chain = join_closure_in_grid(&[vec![0, 0], vec![1, 1], vec![2, 2]], 100).unwrap();
        assert_eq!(chain.len(), 3);
    }

    #[test]
    fn phi_roundtrip_on_a_grid_lattice() {
        let grid = join_closure_in_grid(
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            100,
        )
        .unwrap();
        let l = FiniteJoinSemilattice::from_grid(&grid);
        let e = GridEmbedding {
            d: 2,
            coordinates: grid.points().to_vec(),
        };
        let phi = phi_from_embedding(&l, &e).unwrap();
        // closure of the image is the image itself here
        assert_eq!(phi.domain.len(), l.len());
        let back = phi_dagger(&l, &phi).unwrap();
        assert!(verify_embedding(l.poset(), &back));
    }

    #[test]
    fn phi_dagger_collapsing_square_onto_chain() {
        let grid = join_closure_in_grid(
            &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            100,
        )
        .unwrap();
        let chain = FiniteJoinSemilattice::try_new(FinitePoset::chain(3)).unwrap();
        // points sorted: (0,0), (0,1), (1,0), (1,1)
        let values = vec![0, 2, 1, 2];
        let phi = JoinPreservingMap::new(grid, values, &chain).unwrap();
        let e = phi_dagger(&chain, &phi).unwrap();
        assert!(verify_embedding(chain.poset(), &e));
        assert_eq!(e.coordinates, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn dimension_invariant_under_relabeling_and_bottom() {
        let p = FinitePoset::from_leq_fn(4, |a, b| a == b || (a == 0 && b > 1) || (a == 1 && b == 3))
            .unwrap();
        let (d, _) = order_dimension(&p).unwrap();
        let relabeled = p.relabel(&[2, 0, 3, 1]).unwrap();
        let (d2, _) = order_dimension(&relabeled).unwrap();
        assert_eq!(d, d2);
        let with_bottom = p.with_new_bottom();
        let (d3, _) = order_dimension(&with_bottom).unwrap();
        assert_eq!(d, d3);
    }
}
