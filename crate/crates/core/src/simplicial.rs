//! Simplicial complexes on `[n]`, the Stanley–Reisner translation in both
//! directions, link, deletion, pure skeletons, and vertex decomposability
//! with witness trees.
//!
//! A complex is stored by its facets, as bit masks over the vertex set. The
//! void complex (no faces at all) and the empty complex (just the empty
//! face) are distinct values.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

const MAX_VERTICES: usize = 64;
const MAX_ENUM_VERTICES: usize = 16;
const MAX_FACES: usize = 1 << 22;

/// A simplicial complex on the vertex set `{0, ..., n-1}`, held as the
/// antichain of its facets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds a complex from generating faces; non-maximal faces are dropped.
    pub fn new(n: usize, faces: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::ResourceCap(format!(
                "complexes support at most {MAX_VERTICES} vertices"
            )));
        }
        let mut masks = Vec::with_capacity(faces.len());
        for face in faces {
            let mut mask = 0u64;
            for v in face {
                if v >= n {
                    return Err(Error::Precondition(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                mask |= 1 << v;
            }
            masks.push(mask);
        }
        Ok(Self::from_masks(n, masks))
    }

    fn from_masks(n: usize, mut masks: Vec<u64>) -> Self {
        masks.sort_unstable();
        masks.dedup();
        let maximal: Vec<u64> = masks
            .iter()
            .copied()
            .filter(|&f| !masks.iter().any(|&g| g != f && f & g == f))
            .collect();
        let mut facets = maximal;
        facets.sort_unstable_by_key(|&f| (f.count_ones(), f));
        SimplicialComplex { n, facets }
    }

    /// The void complex: no faces, not even the empty one.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![] }
    }

    /// The empty complex `{∅}`.
    pub fn empty_complex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![0],
        }
    }

    /// The full simplex on all `n` vertices.
    pub fn simplex(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::ResourceCap("too many vertices".into()));
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(SimplicialComplex {
            n,
            facets: vec![mask],
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// A simplex is a complex with exactly one facet; this includes the
    /// empty complex.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_to_vec(f)).collect()
    }

    /// Dimension: `None` for the void complex, `-1` for the empty complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i64 - 1)
            .max()
    }

    pub fn is_face_mask(&self, mask: u64) -> bool {
        self.facets.iter().any(|&f| mask & f == mask)
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        match vec_to_mask(face, self.n) {
            Some(mask) => self.is_face_mask(mask),
            None => false,
        }
    }

    /// Vertices that actually occur in some face.
    pub fn vertices(&self) -> Vec<usize> {
        let union = self.facets.iter().fold(0u64, |acc, &f| acc | f);
        mask_to_vec(union)
    }

    /// All faces, as masks, by downward closure of the facets.
    pub fn faces(&self) -> Result<Vec<u64>> {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = self.facets.clone();
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            if seen.len() > MAX_FACES {
                return Err(Error::ResourceCap("face enumeration cap".into()));
            }
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                stack.push(f ^ low);
                bits ^= low;
            }
        }
        let mut faces: Vec<u64> = seen.into_iter().collect();
        faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
        Ok(faces)
    }

    pub fn min_facet_size(&self) -> Result<usize> {
        self.facets
            .iter()
            .map(|f| f.count_ones() as usize)
            .min()
            .ok_or_else(|| Error::Precondition("void complex has no facets".into()))
    }

    /// The subcomplex generated by the faces of dimension exactly `i`.
    pub fn pure_skeleton(&self, i: usize) -> Result<SimplicialComplex> {
        let dim = self
            .dim()
            .ok_or_else(|| Error::Precondition("skeleton of the void complex".into()))?;
        if (i as i64) > dim {
            return Err(Error::Precondition(format!(
                "skeleton index {i} exceeds dimension {dim}"
            )));
        }
        let size = i + 1;
        let mut faces = HashSet::new();
        for &f in &self.facets {
            collect_subsets_of_size(f, size, &mut faces);
        }
        Ok(SimplicialComplex::from_masks(
            self.n,
            faces.into_iter().collect(),
        ))
    }

    /// Link and deletion at a face, both relabeled onto the surviving
    /// vertices `[n] \ F` in increasing order.
    pub fn link_and_deletion(
        &self,
        face: &[usize],
    ) -> Result<(SimplicialComplex, SimplicialComplex)> {
        let mask = vec_to_mask(face, self.n)
            .ok_or_else(|| Error::Precondition("vertex out of range".into()))?;
        if !self.is_face_mask(mask) {
            return Err(Error::NotFound("face does not belong to the complex".into()));
        }
        let (link, deletion, _) = self.link_and_deletion_masks(mask);
        let relabel = compress_map(self.n, mask);
        let n2 = self.n - mask.count_ones() as usize;
        let rl = |masks: Vec<u64>| {
            SimplicialComplex::from_masks(
                n2,
                masks
                    .into_iter()
                    .map(|f| remap_mask(f, &relabel))
                    .collect(),
            )
        };
        Ok((rl(link), rl(deletion)))
    }

    /// Link and deletion facets in the original labels; third component is
    /// whether every deletion facet is a facet of `self`.
    fn link_and_deletion_masks(&self, mask: u64) -> (Vec<u64>, Vec<u64>, bool) {
        let link: Vec<u64> = self
            .facets
            .iter()
            .filter(|&&f| mask & f == mask)
            .map(|&f| f ^ mask)
            .collect();
        let deletion_gen: Vec<u64> = self.facets.iter().map(|&f| f & !mask).collect();
        let deletion = SimplicialComplex::from_masks(self.n, deletion_gen).facets;
        let preserved = deletion.iter().all(|f| self.facets.contains(f));
        (link, deletion, preserved)
    }

    /// The squarefree ideal of minimal non-faces.
    pub fn stanley_reisner_ideal(&self) -> Result<MonomialIdeal> {
        if self.is_void() {
            return Err(Error::Precondition(
                "the void complex has no Stanley-Reisner ideal".into(),
            ));
        }
        if self.n > MAX_ENUM_VERTICES {
            return Err(Error::ResourceCap(format!(
                "minimal non-face enumeration supports at most {MAX_ENUM_VERTICES} vertices"
            )));
        }
        let mut gens = vec![];
        for mask in 0u64..(1 << self.n) {
            if self.is_face_mask(mask) {
                continue;
            }
            // minimal: every proper subset obtained by dropping one vertex is a face
            let mut minimal = true;
            let mut bits = mask;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !self.is_face_mask(mask ^ low) {
                    minimal = false;
                    break;
                }
                bits ^= low;
            }
            if minimal {
                let mut exps = vec![0u64; self.n];
                for v in mask_to_vec(mask) {
                    exps[v] = 1;
                }
                gens.push(Monomial::new(exps));
            }
        }
        MonomialIdeal::from_generators(self.n, gens)
    }

    /// Decides vertex decomposability by the shedding-vertex recursion,
    /// memoized on the facet list. Returns a witness tree or, on failure,
    /// the first obstruction seen at each top-level candidate vertex.
    pub fn is_vertex_decomposable(&self) -> Result<VertexDecomposability> {
        if self.is_void() {
            return Err(Error::Precondition(
                "vertex decomposability of the void complex".into(),
            ));
        }
        let mut memo = HashMap::new();
        match vd_search(self, &mut memo) {
            Some(tree) => Ok(VertexDecomposability::Decomposable(tree)),
            None => {
                let mut per_vertex = vec![];
                for k in self.vertices() {
                    let mask = 1u64 << k;
                    let (link, deletion, preserved) = self.link_and_deletion_masks(mask);
                    let reason = if !preserved {
                        VdObstruction::DeletionFacetNotInComplex
                    } else {
                        let relabel = compress_map(self.n, mask);
                        let n2 = self.n - 1;
                        let del = SimplicialComplex::from_masks(
                            n2,
                            deletion.iter().map(|&f| remap_mask(f, &relabel)).collect(),
                        );
                        let lk = SimplicialComplex::from_masks(
                            n2,
                            link.iter().map(|&f| remap_mask(f, &relabel)).collect(),
                        );
                        if vd_search(&del, &mut memo).is_none() {
                            VdObstruction::DeletionNotDecomposable
                        } else if vd_search(&lk, &mut memo).is_none() {
                            VdObstruction::LinkNotDecomposable
                        } else {
                            // cannot happen: such a vertex would have shed
                            VdObstruction::DeletionFacetNotInComplex
                        }
                    };
                    per_vertex.push((k, reason));
                }
                Ok(VertexDecomposability::NotDecomposable(per_vertex))
            }
        }
    }
}

/// Witness tree for vertex decomposability: leaves are simplices, inner
/// nodes record the shedding vertex (in the labels of the complex at that
/// recursion level) and the two subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShedTree {
    Simplex,
    Shed {
        vertex: usize,
        deletion: Box<ShedTree>,
        link: Box<ShedTree>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VdObstruction {
    DeletionFacetNotInComplex,
    DeletionNotDecomposable,
    LinkNotDecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexDecomposability {
    Decomposable(ShedTree),
    NotDecomposable(Vec<(usize, VdObstruction)>),
}

impl VertexDecomposability {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, VertexDecomposability::Decomposable(_))
    }
}

fn vd_search(
    c: &SimplicialComplex,
    memo: &mut HashMap<(usize, Vec<u64>), Option<ShedTree>>,
) -> Option<ShedTree> {
    if c.facets.len() == 1 {
        return Some(ShedTree::Simplex);
    }
    let key = (c.n, c.facets.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut result = None;
    for k in c.vertices() {
        let mask = 1u64 << k;
        let (link, deletion, preserved) = c.link_and_deletion_masks(mask);
        if !preserved {
            continue;
        }
        let relabel = compress_map(c.n, mask);
        let n2 = c.n - 1;
        let del = SimplicialComplex::from_masks(
            n2,
            deletion.iter().map(|&f| remap_mask(f, &relabel)).collect(),
        );
        let Some(del_tree) = vd_search(&del, memo) else {
            continue;
        };
        let lk = SimplicialComplex::from_masks(
            n2,
            link.iter().map(|&f| remap_mask(f, &relabel)).collect(),
        );
        let Some(link_tree) = vd_search(&lk, memo) else {
            continue;
        };
        result = Some(ShedTree::Shed {
            vertex: k,
            deletion: Box::new(del_tree),
            link: Box::new(link_tree),
        });
        break;
    }
    memo.insert(key, result.clone());
    result
}

/// The unique complex whose Stanley-Reisner ideal is the given squarefree
/// proper ideal: faces are the supports avoiding every generator.
pub fn complex_from_squarefree_ideal(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if ideal.is_unit() {
        return Err(Error::Precondition(
            "the unit ideal is not a Stanley-Reisner ideal".into(),
        ));
    }
    if !ideal.is_squarefree() {
        return Err(Error::Precondition(
            "ideal has a non-squarefree generator".into(),
        ));
    }
    let n = ideal.n_vars();
    if n > MAX_ENUM_VERTICES {
        return Err(Error::ResourceCap(format!(
            "face enumeration supports at most {MAX_ENUM_VERTICES} vertices"
        )));
    }
    let gen_masks: Vec<u64> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &e)| if e > 0 { acc | 1 << i } else { acc })
        })
        .collect();
    let is_face = |mask: u64| gen_masks.iter().all(|&g| g & mask != g);
    let mut facets = vec![];
    for mask in 0u64..(1 << n) {
        if is_face(mask) && (0..n).all(|v| mask >> v & 1 == 1 || !is_face(mask | 1 << v)) {
            facets.push(mask);
        }
    }
    Ok(SimplicialComplex::from_masks(n, facets))
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn vec_to_mask(face: &[usize], n: usize) -> Option<u64> {
    let mut mask = 0u64;
    for &v in face {
        if v >= n {
            return None;
        }
        mask |= 1 << v;
    }
    Some(mask)
}

/// Order-preserving relabeling of `[n] \ removed` onto a prefix.
fn compress_map(n: usize, removed: u64) -> Vec<Option<usize>> {
    let mut map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if removed >> v & 1 == 0 {
            map[v] = Some(next);
            next += 1;
        }
    }
    map
}

fn remap_mask(mask: u64, map: &[Option<usize>]) -> u64 {
    let mut out = 0u64;
    for (v, slot) in map.iter().enumerate() {
        if mask >> v & 1 == 1 {
            out |= 1 << slot.expect("removed vertices never occur in remapped faces");
        }
    }
    out
}

fn collect_subsets_of_size(mask: u64, size: usize, out: &mut HashSet<u64>) {
    let verts = mask_to_vec(mask);
    if verts.len() < size {
        return;
    }
    // iterate over all `size`-subsets of the facet's vertices
    let k = verts.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let sub = idx.iter().fold(0u64, |acc, &i| acc | 1 << verts[i]);
        out.insert(sub);
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + k - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn void_and_empty_are_distinct() {
        let void = SimplicialComplex::void(2);
        let empty = SimplicialComplex::empty_complex(2);
        assert!(void.is_void());
        assert!(!empty.is_void());
        assert_eq!(void.dim(), None);
        assert_eq!(empty.dim(), Some(-1));
        assert_ne!(void, empty);
    }

    #[test]
    fn constructor_keeps_only_maximal_faces() {
        let c = cx(3, &[&[0], &[0, 1], &[1, 2]]);
        assert_eq!(c.facets(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn sr_ideal_examples() {
        // <{1,2},{2,3}> on [3] -> (x1 x3); vertices 0-based internally
        let c = cx(3, &[&[0, 1], &[1, 2]]);
        let i = c.stanley_reisner_ideal().unwrap();
        assert_eq!(i.generators(), &[Monomial::new(vec![1, 0, 1])]);

        // a simplex has no non-faces
        let s = SimplicialComplex::simplex(3).unwrap();
        assert!(s.stanley_reisner_ideal().unwrap().is_zero());

        // boundary of the triangle
        let b = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let i = b.stanley_reisner_ideal().unwrap();
        assert_eq!(i.generators(), &[Monomial::new(vec![1, 1, 1])]);
    }

    #[test]
    fn sr_complex_examples() {
        let i = MonomialIdeal::from_generators(3, vec![Monomial::new(vec![1, 0, 1])]).unwrap();
        let c = complex_from_squarefree_ideal(&i).unwrap();
        assert_eq!(c, cx(3, &[&[0, 1], &[1, 2]]));

        let full = complex_from_squarefree_ideal(&MonomialIdeal::zero(3)).unwrap();
        assert_eq!(full, SimplicialComplex::simplex(3).unwrap());

        // (x_i x_j : i < j) on 3 vertices -> three isolated points
        let gens = vec![
            Monomial::new(vec![1, 1, 0]),
            Monomial::new(vec![1, 0, 1]),
            Monomial::new(vec![0, 1, 1]),
        ];
        let i = MonomialIdeal::from_generators(3, gens).unwrap();
        let c = complex_from_squarefree_ideal(&i).unwrap();
        assert_eq!(c, cx(3, &[&[0], &[1], &[2]]));
    }

    #[test]
    fn sr_roundtrip() {
        let c = cx(4, &[&[0, 1, 2], &[1, 3]]);
        let i = c.stanley_reisner_ideal().unwrap();
        assert_eq!(complex_from_squarefree_ideal(&i).unwrap(), c);
    }

    #[test]
    fn link_and_deletion_examples() {
        let c = cx(3, &[&[0, 1], &[1, 2]]);
        // at the middle vertex both are the two outer points
        let (lk, del) = c.link_and_deletion(&[1]).unwrap();
        assert_eq!(lk, cx(2, &[&[0], &[1]]));
        assert_eq!(del, cx(2, &[&[0], &[1]]));

        // at the empty face: identity
        let (lk, del) = c.link_and_deletion(&[]).unwrap();
        assert_eq!(lk, c);
        assert_eq!(del, c);

        let c = cx(4, &[&[0, 1], &[2, 3]]);
        let (lk, del) = c.link_and_deletion(&[0]).unwrap();
        assert_eq!(lk, cx(3, &[&[0]]));
        assert_eq!(del, cx(3, &[&[0], &[1, 2]]));

        assert!(c.link_and_deletion(&[0, 2]).is_err());
    }

    #[test]
    fn pure_skeleton_examples() {
        let c = cx(3, &[&[0, 1], &[2]]);
        assert_eq!(c.pure_skeleton(0).unwrap(), cx(3, &[&[0], &[1], &[2]]));

        let s = cx(3, &[&[0, 1, 2]]);
        assert_eq!(
            s.pure_skeleton(1).unwrap(),
            cx(3, &[&[0, 1], &[0, 2], &[1, 2]])
        );
        assert_eq!(s.pure_skeleton(2).unwrap(), s);
        assert!(s.pure_skeleton(3).is_err());
    }

    #[test]
    fn vertex_decomposability_examples() {
        // any simplex
        assert!(SimplicialComplex::simplex(3)
            .unwrap()
            .is_vertex_decomposable()
            .unwrap()
            .is_decomposable());
        // the empty complex is a simplex with facet ∅
        assert!(SimplicialComplex::empty_complex(2)
            .is_vertex_decomposable()
            .unwrap()
            .is_decomposable());
        // boundary of the triangle
        let b = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert!(b.is_vertex_decomposable().unwrap().is_decomposable());
        // two disjoint edges are not vertex decomposable
        let c = cx(4, &[&[0, 1], &[2, 3]]);
        match c.is_vertex_decomposable().unwrap() {
            VertexDecomposability::NotDecomposable(reasons) => {
                assert_eq!(reasons.len(), 4);
                assert!(reasons
                    .iter()
                    .all(|(_, r)| *r == VdObstruction::DeletionFacetNotInComplex));
            }
            _ => panic!("expected refutation"),
        }
    }

    #[test]
    fn shedding_witness_subcomplexes_are_decomposable() {
        let b = cx(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let VertexDecomposability::Decomposable(tree) = b.is_vertex_decomposable().unwrap()
        else {
            panic!("expected witness");
        };
        let ShedTree::Shed { vertex, .. } = tree else {
            panic!("triangle boundary is not a simplex");
        };
        let (lk, del) = b.link_and_deletion(&[vertex]).unwrap();
        assert!(lk.is_vertex_decomposable().unwrap().is_decomposable());
        assert!(del.is_vertex_decomposable().unwrap().is_decomposable());
    }

    #[test]
    fn min_facet_size_examples() {
        assert_eq!(cx(3, &[&[0, 1], &[2]]).min_facet_size().unwrap(), 1);
        assert_eq!(
            cx(3, &[&[0, 1], &[0, 2], &[1, 2]]).min_facet_size().unwrap(),
            2
        );
        assert!(SimplicialComplex::void(2).min_facet_size().is_err());
    }
}
