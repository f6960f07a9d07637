//! Double description engine: given integer halfspaces in Z^d, maintain the
//! lineality basis and the extreme rays of their intersection.
//!
//! The engine processes halfspaces incrementally. While the lineality space
//! still meets a new halfspace transversally, the cut peels one lineality
//! dimension off; afterwards the classic ray-combination step with the
//! combinatorial adjacency test applies.

use num_traits::{Signed, Zero};

use crate::bits::BitSet;
use crate::linalg::{primitive, Int};

#[derive(Clone, Debug)]
pub struct DdRay {
    pub vector: Vec<Int>,
    /// Indices of input halfspaces evaluating to zero on this ray.
    pub tight: BitSet,
}

#[derive(Debug)]
pub struct DdOutput {
    /// Basis of the lineality space of the intersection.
    pub lineality: Vec<Vec<Int>>,
    /// Extreme rays modulo lineality, primitive integer vectors.
    pub rays: Vec<DdRay>,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intersect the halfspaces `{x : <h, x> >= 0}` over the given ambient
/// dimension, starting from all of Z^dim.
pub fn halfspace_intersection(dim: usize, halfspaces: &[Vec<Int>]) -> DdOutput {
    let n = halfspaces.len();
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (idx, h) in halfspaces.iter().enumerate() {
        let lin_evals: Vec<Int> = lineality.iter().map(|l| dot(l, h)).collect();
        if let Some(pos) = lin_evals.iter().position(|e| !e.is_zero()) {
            // peel one lineality dimension
            let mut l0 = lineality.remove(pos);
            let mut e0 = lin_evals[pos].clone();
            if e0.is_negative() {
                for x in l0.iter_mut() {
                    *x = -x.clone();
                }
                e0 = -e0;
            }
            for (k, l) in lineality.iter_mut().enumerate() {
                let e = if k < pos {
                    lin_evals[k].clone()
                } else {
                    lin_evals[k + 1].clone()
                };
                if e.is_zero() {
                    continue;
                }
                for (c, x) in l.iter_mut().enumerate() {
                    *x = &e0 * &*x - &e * &l0[c];
                }
                primitive(l);
            }
            for ray in rays.iter_mut() {
                let e = dot(&ray.vector, h);
                if !e.is_zero() {
                    for (c, x) in ray.vector.iter_mut().enumerate() {
                        *x = &e0 * &*x - &e * &l0[c];
                    }
                    primitive(&mut ray.vector);
                }
                ray.tight.insert(idx);
            }
            let mut tight = BitSet::new(n);
            for j in 0..idx {
                tight.insert(j);
            }
            rays.push(DdRay { vector: l0, tight });
            continue;
        }

        // lineality is contained in the hyperplane; classic DD step on rays
        let evals: Vec<Int> = rays.iter().map(|r| dot(&r.vector, h)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_negative()).collect();
        for (i, ray) in rays.iter().enumerate() {
            if !evals[i].is_negative() {
                let mut r = ray.clone();
                if evals[i].is_zero() {
                    r.tight.insert(idx);
                }
                next.push(r);
            }
        }
        for &p in &positive {
            for &m in &negative {
                let t = rays[p].tight.intersection(&rays[m].tight);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == m || !t.is_subset(&r.tight));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<Int> = rays[m]
                    .vector
                    .iter()
                    .zip(&rays[p].vector)
                    .map(|(mv, pv)| &evals[p] * mv - &evals[m] * pv)
                    .collect();
                primitive(&mut v);
                let mut tight = t;
                tight.insert(idx);
                next.push(DdRay { vector: v, tight });
            }
        }
        rays = next;
    }

    rays.sort_by(|a, b| a.vector.cmp(&b.vector));
    lineality.sort();
    DdOutput { lineality, rays }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_big;

    fn hs(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| to_big(r)).collect()
    }

    #[test]
    fn quadrant_from_axes() {
        let out = halfspace_intersection(2, &hs(&[&[1, 0], &[0, 1]]));
        assert!(out.lineality.is_empty());
        let rays: Vec<Vec<Int>> = out.rays.iter().map(|r| r.vector.clone()).collect();
        assert_eq!(rays, vec![to_big(&[0, 1]), to_big(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let out = halfspace_intersection(2, &hs(&[&[0, 1]]));
        assert_eq!(out.lineality.len(), 1);
        assert_eq!(out.rays.len(), 1);
        assert_eq!(out.rays[0].vector, to_big(&[0, 1]));
    }

    #[test]
    fn empty_input_is_whole_space() {
        let out = halfspace_intersection(3, &[]);
        assert_eq!(out.lineality.len(), 3);
        assert!(out.rays.is_empty());
    }

    #[test]
    fn square_cone_has_four_rays() {
        // {x >= 0, y >= 0, z >= x, z >= y} in Z^3: cone over a square
        let out = halfspace_intersection(3, &hs(&[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 1], &[0, -1, 1]]));
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 4);
        for r in &out.rays {
            assert_eq!(r.tight.count(), 2);
        }
    }

    #[test]
    fn opposite_halfspaces_cut_to_hyperplane() {
        let out = halfspace_intersection(2, &hs(&[&[1, 0], &[-1, 0]]));
        assert_eq!(out.lineality.len(), 1);
        assert_eq!(out.lineality[0], to_big(&[0, 1]));
        assert!(out.rays.is_empty());
    }
}
