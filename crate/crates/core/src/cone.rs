//! Polyhedral geometry of cone(Q): dual description, graded face lattice,
//! incidence signs for the localization complex, triangulation and
//! normalized volume.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bits::BitSet;
use crate::dd;
use crate::error::{Error, Result};
use crate::linalg::{
    determinant, kernel_basis, primitive, rank_rational, to_big, to_i64, Int, IntMatrix, Lattice,
};

/// Exact dual description of the cone spanned by a generator list.
#[derive(Clone, Debug)]
pub struct ConeDescription {
    ambient: usize,
    rays: Vec<Vec<i64>>,
    facet_forms: Vec<Vec<i64>>,
    lineality: Lattice,
    span: Lattice,
}

impl ConeDescription {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Primitive generators of the extreme rays (modulo lineality), sorted.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Primitive integer supporting forms, one per facet, sorted.
    pub fn facet_forms(&self) -> &[Vec<i64>] {
        &self.facet_forms
    }

    /// Saturated lattice of the lineality space.
    pub fn lineality(&self) -> &Lattice {
        &self.lineality
    }

    /// Saturated lattice of the linear span of the cone.
    pub fn span(&self) -> &Lattice {
        &self.span
    }

    pub fn form_eval(&self, form: usize, v: &[i64]) -> i128 {
        dot_i128(&self.facet_forms[form], v)
    }

    /// Exact membership of an integer point in the closed cone.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        if !self.span.contains_i64(v)? {
            return Ok(false);
        }
        Ok(self
            .facet_forms
            .iter()
            .all(|f| dot_i128(f, v) >= 0))
    }

    /// Facets whose supporting form vanishes on `v`.
    pub fn tight_facets(&self, v: &[i64]) -> BitSet {
        let mut s = BitSet::new(self.facet_forms.len());
        for (i, f) in self.facet_forms.iter().enumerate() {
            if dot_i128(f, v) == 0 {
                s.insert(i);
            }
        }
        s
    }
}

pub(crate) fn dot_i128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Solves `z · m = y` over the rationals for square invertible `m`.
fn solve_rational_row(m: &IntMatrix, y: &[Int]) -> Vec<BigRational> {
    let n = m.rows();
    // work on the transpose: m^T z^T = y^T, Gaussian elimination over Q
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| BigRational::from(m.at(c, r).clone()))
                .collect()
        })
        .collect();
    let mut b: Vec<BigRational> = y.iter().map(|v| BigRational::from(v.clone())).collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("matrix invertible");
        a.swap(col, piv);
        b.swap(col, piv);
        let lead = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &lead;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
            let sub = &f * &b[col];
            b[r] = &b[r] - &sub;
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}

/// Extends a linear form given in coordinates of a lattice basis to a
/// primitive integer form on Z^N that vanishes on the orthogonal complement
/// of the span.
fn extend_form(basis: &IntMatrix, y: &[Int]) -> Result<Vec<i64>> {
    let r = basis.rows();
    let n = basis.cols();
    // m = B B^T, z solves z·m = y, w = z·B
    let mut m = IntMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            let v: Int = basis.row(i).iter().zip(basis.row(j)).map(|(a, b)| a * b).sum();
            m.set(i, j, v);
        }
    }
    let z = solve_rational_row(&m, y);
    let mut w: Vec<BigRational> = vec![BigRational::zero(); n];
    for (i, zi) in z.iter().enumerate() {
        for c in 0..n {
            let term = zi * BigRational::from(basis.at(i, c).clone());
            w[c] = &w[c] + &term;
        }
    }
    // clear denominators and primitivize; scaling factor is positive
    let mut denom = Int::one();
    for x in &w {
        denom = num_integer::lcm(denom, x.denom().clone());
    }
    let mut int_form: Vec<Int> = w
        .iter()
        .map(|x| x.numer() * (&denom / x.denom()))
        .collect();
    primitive(&mut int_form);
    to_i64(&int_form)
}

/// Exact dual description of `cone(generators)`: irredundant primitive facet
/// forms, primitive extreme rays, lineality and span lattices.
pub fn dual_description(generators: &[Vec<i64>]) -> Result<ConeDescription> {
    let nonzero: Vec<&Vec<i64>> = generators
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect();
    let ambient = generators
        .first()
        .map(|g| g.len())
        .ok_or(Error::EmptyGenerators)?;
    if nonzero.is_empty() {
        return Err(Error::DegenerateMonoid);
    }
    for g in &nonzero {
        if g.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: g.len(),
            });
        }
    }
    let gp = Lattice::from_i64_rows(ambient, &nonzero.iter().map(|g| (*g).clone()).collect::<Vec<_>>());
    let rank = gp.rank();

    // generator coordinates inside the span lattice (full-dimensional there)
    let mut coords: Vec<Vec<Int>> = Vec::with_capacity(nonzero.len());
    for g in &nonzero {
        coords.push(gp.coordinates(&to_big(g)).expect("generator lies in its own span"));
    }
    coords.sort();
    coords.dedup();

    // facets = extreme rays of the dual cone
    let dual = dd::halfspace_intersection(rank, &coords);
    debug_assert!(dual.lineality.is_empty(), "dual cone of a full-dim cone is pointed");
    let mut facet_forms: Vec<Vec<i64>> = Vec::with_capacity(dual.rays.len());
    for ray in &dual.rays {
        facet_forms.push(extend_form(gp.basis(), &ray.vector)?);
    }
    facet_forms.sort();
    facet_forms.dedup();

    // extreme rays of the cone from the facet forms, back in span coordinates
    let primal_halfspaces: Vec<Vec<Int>> = dual.rays.iter().map(|r| r.vector.clone()).collect();
    let primal = dd::halfspace_intersection(rank, &primal_halfspaces);
    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(primal.rays.len());
    for ray in &primal.rays {
        let mut v = vec![Int::zero(); ambient];
        for (i, c) in ray.vector.iter().enumerate() {
            for (j, x) in v.iter_mut().enumerate() {
                *x += c * gp.basis().at(i, j);
            }
        }
        primitive(&mut v);
        rays.push(to_i64(&v)?);
    }
    rays.sort();

    let span = gp.saturation();
    // lineality: integer kernel of the facet forms intersected with the span
    let mut cut_rows: Vec<Vec<Int>> = facet_forms.iter().map(|f| to_big(f)).collect();
    let span_complement = kernel_basis(gp.basis());
    cut_rows.extend(span_complement.row_vecs());
    let lineality = if cut_rows.is_empty() {
        span.clone()
    } else {
        let k = kernel_basis(&IntMatrix::from_rows(&cut_rows));
        Lattice::from_rows(ambient, &k)
    };

    let cone = ConeDescription {
        ambient,
        rays,
        facet_forms,
        lineality,
        span,
    };
    // round-trip sanity: every input generator satisfies all facet forms
    for g in &nonzero {
        for f in &cone.facet_forms {
            if dot_i128(f, g) < 0 {
                return Err(Error::FaceLattice(
                    "facet form negative on an input generator".into(),
                ));
            }
        }
    }
    Ok(cone)
}

/// A face of the cone / monoid, identified by the facets containing it.
#[derive(Clone, Debug)]
pub struct Face {
    pub id: usize,
    /// Facets whose supporting form vanishes on the face.
    pub facet_set: BitSet,
    /// Extreme rays lying on the face.
    pub ray_set: BitSet,
    /// Indices of monoid generators lying on the face.
    pub generator_indices: Vec<usize>,
    /// *dimension: rank of the face span modulo the lineality.
    pub star_dim: usize,
    /// Integer span of the monoid generators on the face (gp of the face monoid).
    pub span: Lattice,
}

/// The full graded face lattice with incidence signs on the covers.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    covers_up: Vec<Vec<(usize, i8)>>,
    covers_down: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    star_dim: usize,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Minimal face (the units face F_0).
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// The full monoid as a face of itself.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn star_dim(&self) -> usize {
        self.star_dim
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.star_dim == d)
    }

    /// Upper covers with their incidence signs.
    pub fn covers_up(&self, id: usize) -> &[(usize, i8)] {
        &self.covers_up[id]
    }

    pub fn covers_down(&self, id: usize) -> &[usize] {
        &self.covers_down[id]
    }

    /// True when `a` is contained in `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[b].facet_set.is_subset(&self.faces[a].facet_set)
    }
}

/// Builds the complete graded face lattice of the cone, attaching the monoid
/// generators lying on each face. Signs are not yet populated.
pub fn face_lattice(cone: &ConeDescription, generators: &[Vec<i64>]) -> Result<FaceLattice> {
    let nf = cone.facet_forms().len();
    let nr = cone.rays().len();
    let ray_tight: Vec<BitSet> = cone
        .rays()
        .iter()
        .map(|r| cone.tight_facets(r))
        .collect();

    // closure: facet set -> rays on all of them -> all facets through those rays
    let close = |s: &BitSet| -> (BitSet, BitSet) {
        let mut rays = BitSet::new(nr);
        for (i, t) in ray_tight.iter().enumerate() {
            if s.is_subset(t) {
                rays.insert(i);
            }
        }
        let mut closed = BitSet::full(nf);
        for i in rays.iter() {
            closed = closed.intersection(&ray_tight[i]);
        }
        (closed, rays)
    };

    let mut seen: std::collections::BTreeMap<BitSet, BitSet> = Default::default();
    let (top_set, top_rays) = close(&BitSet::new(nf));
    seen.insert(top_set.clone(), top_rays);
    let mut queue = vec![top_set];
    while let Some(s) = queue.pop() {
        for f in 0..nf {
            if s.contains(f) {
                continue;
            }
            let mut s2 = s.clone();
            s2.insert(f);
            let (closed, rays) = close(&s2);
            if !seen.contains_key(&closed) {
                seen.insert(closed.clone(), rays);
                queue.push(closed);
            }
        }
    }

    let lin_rank = cone.lineality().rank();
    let mut faces: Vec<(BitSet, BitSet, usize)> = Vec::new();
    for (facet_set, ray_set) in seen {
        let mut rows: Vec<Vec<Int>> = ray_set.iter().map(|i| to_big(&cone.rays()[i])).collect();
        rows.extend(cone.lineality().basis().row_vecs());
        let rank = if rows.is_empty() {
            0
        } else {
            rank_rational(&IntMatrix::from_rows(&rows))
        };
        faces.push((facet_set, ray_set, rank - lin_rank));
    }
    faces.sort_by(|a, b| (a.2, &a.0).cmp(&(b.2, &b.0)));

    let mut out = Vec::with_capacity(faces.len());
    for (id, (facet_set, ray_set, star_dim)) in faces.into_iter().enumerate() {
        let generator_indices: Vec<usize> = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| facet_set.iter().all(|f| cone.form_eval(f, g) == 0))
            .map(|(i, _)| i)
            .collect();
        let gen_rows: Vec<Vec<i64>> = generator_indices
            .iter()
            .map(|&i| generators[i].clone())
            .collect();
        let span = Lattice::from_i64_rows(cone.ambient(), &gen_rows);
        out.push(Face {
            id,
            facet_set,
            ray_set,
            generator_indices,
            star_dim,
            span,
        });
    }

    let n = out.len();
    let star_dim = out.iter().map(|f| f.star_dim).max().unwrap_or(0);
    let bottom = 0;
    let top = n - 1;
    if out[bottom].star_dim != 0 || out[top].star_dim != star_dim {
        return Err(Error::FaceLattice("lattice endpoints out of order".into()));
    }
    let mut covers_up = vec![Vec::new(); n];
    let mut covers_down = vec![Vec::new(); n];
    for lower in 0..n {
        for upper in 0..n {
            if out[upper].star_dim == out[lower].star_dim + 1
                && out[upper].facet_set.is_subset(&out[lower].facet_set)
                && out[upper].facet_set != out[lower].facet_set
            {
                covers_up[lower].push((upper, 0i8));
                covers_down[upper].push(lower);
            }
        }
    }
    // gradedness: every containment raises the dimension
    for a in 0..n {
        for b in 0..n {
            if a != b
                && out[b].facet_set.is_subset(&out[a].facet_set)
                && out[a].star_dim >= out[b].star_dim
            {
                return Err(Error::FaceLattice("face lattice is not graded".into()));
            }
        }
    }
    Ok(FaceLattice {
        faces: out,
        covers_up,
        covers_down,
        bottom,
        top,
        star_dim,
    })
}

/// Populates incidence signs on all covers and verifies the diamond
/// condition on every interval of length two.
pub fn incidence_signs(lattice: &mut FaceLattice, cone: &ConeDescription) -> Result<()> {
    // orientation basis per face: HNF basis of (rays on face) + lineality
    let mut bases: Vec<Lattice> = Vec::with_capacity(lattice.faces.len());
    for face in &lattice.faces {
        let mut rows: Vec<Vec<Int>> = face.ray_set.iter().map(|i| to_big(&cone.rays()[i])).collect();
        rows.extend(cone.lineality().basis().row_vecs());
        let l = if rows.is_empty() {
            Lattice::zero(cone.ambient())
        } else {
            Lattice::from_rows(cone.ambient(), &IntMatrix::from_rows(&rows))
        };
        bases.push(l);
    }

    let n = lattice.faces.len();
    for lower in 0..n {
        let ups = lattice.covers_up[lower].clone();
        for (slot, &(upper, _)) in ups.iter().enumerate() {
            // outward vector: sum of the upper face's rays missing from the lower
            let extra: Vec<usize> = lattice.faces[upper]
                .ray_set
                .iter()
                .filter(|&i| !lattice.faces[lower].ray_set.contains(i))
                .collect();
            if extra.is_empty() {
                return Err(Error::FaceLattice("cover without new rays".into()));
            }
            let mut u = vec![Int::zero(); cone.ambient()];
            for &i in &extra {
                for (c, x) in u.iter_mut().enumerate() {
                    *x += Int::from(cone.rays()[i][c]);
                }
            }
            let upper_basis = &bases[upper];
            let k = upper_basis.rank();
            let mut rows: Vec<Vec<Int>> = Vec::with_capacity(k);
            for r in 0..bases[lower].rank() {
                let coords = upper_basis
                    .coordinates(bases[lower].basis().row(r))
                    .ok_or_else(|| Error::FaceLattice("face basis not in cover span".into()))?;
                rows.push(coords);
            }
            let ucoords = upper_basis
                .coordinates(&u)
                .ok_or_else(|| Error::FaceLattice("outward vector not in cover span".into()))?;
            rows.push(ucoords);
            if rows.len() != k {
                return Err(Error::FaceLattice("cover dimensions inconsistent".into()));
            }
            let det = determinant(&IntMatrix::from_rows(&rows));
            let eps = if det.is_positive() {
                1i8
            } else if det.is_negative() {
                -1i8
            } else {
                return Err(Error::FaceLattice("degenerate orientation".into()));
            };
            lattice.covers_up[lower][slot].1 = eps;
        }
    }

    // diamond condition on all length-2 intervals
    for f in 0..n {
        let mut targets: std::collections::BTreeMap<usize, Vec<(usize, i8)>> = Default::default();
        for &(g, e1) in &lattice.covers_up[f] {
            for &(h, e2) in &lattice.covers_up[g] {
                targets.entry(h).or_default().push((g, e1 * e2));
            }
        }
        for (h, middles) in targets {
            if middles.len() != 2 {
                return Err(Error::FaceLattice(format!(
                    "interval [{f},{h}] has {} middle faces",
                    middles.len()
                )));
            }
            let sum: i32 = middles.iter().map(|&(_, e)| e as i32).sum();
            if sum != 0 {
                return Err(Error::FaceLattice(format!(
                    "diamond condition fails on interval [{f},{h}]"
                )));
            }
        }
    }
    Ok(())
}

/// Placing triangulation of the cone spanned by the given full-rank point
/// set. Returns index sets of linearly independent spanning subsets whose
/// cones partition the total cone (interiors disjoint).
pub fn placing_triangulation(points: &[Vec<Int>]) -> Result<Vec<Vec<usize>>> {
    let dim = points.first().map(|p| p.len()).ok_or(Error::EmptyGenerators)?;
    let full_rank = rank_rational(&IntMatrix::from_rows(points));
    if full_rank != dim {
        return Err(Error::Unsupported(
            "triangulation input not full-dimensional".into(),
        ));
    }
    // greedy initial independent set in input order
    let mut initial: Vec<usize> = Vec::new();
    let mut current_rank = 0;
    for (i, _) in points.iter().enumerate() {
        let mut rows: Vec<Vec<Int>> = initial.iter().map(|&j| points[j].clone()).collect();
        rows.push(points[i].clone());
        let r = rank_rational(&IntMatrix::from_rows(&rows));
        if r > current_rank {
            initial.push(i);
            current_rank = r;
        }
        if current_rank == dim {
            break;
        }
    }
    let mut simplices: Vec<Vec<usize>> = vec![initial.clone()];
    let in_initial: std::collections::BTreeSet<usize> = initial.iter().copied().collect();

    for p in 0..points.len() {
        if in_initial.contains(&p) {
            continue;
        }
        // boundary ridges with outward normals
        let mut ridge_count: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
        for (si, s) in simplices.iter().enumerate() {
            for skip in 0..s.len() {
                let ridge: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let mut key = ridge;
                key.sort_unstable();
                ridge_count.entry(key).or_default().push(si);
            }
        }
        let mut new_simplices: Vec<Vec<usize>> = Vec::new();
        for (ridge, owners) in &ridge_count {
            if owners.len() != 1 {
                continue;
            }
            let owner = &simplices[owners[0]];
            let rows: Vec<Vec<Int>> = ridge.iter().map(|&i| points[i].clone()).collect();
            let kernel = kernel_basis(&IntMatrix::from_rows(&rows));
            if kernel.rows() != 1 {
                continue; // degenerate ridge
            }
            let mut normal = kernel.row(0).to_vec();
            let opposite = owner
                .iter()
                .find(|v| !ridge.contains(v))
                .expect("simplex has a vertex off its ridge");
            let side: Int = normal
                .iter()
                .zip(&points[*opposite])
                .map(|(a, b)| a * b)
                .sum();
            if side.is_positive() {
                for x in normal.iter_mut() {
                    *x = -x.clone();
                }
            }
            let h: Int = normal.iter().zip(&points[p]).map(|(a, b)| a * b).sum();
            if h.is_positive() {
                let mut s = ridge.clone();
                s.push(p);
                new_simplices.push(s);
            }
        }
        simplices.extend(new_simplices);
    }
    Ok(simplices)
}

/// Triangulates the pointed cone on its extreme rays and, when a height form
/// is supplied, returns the normalized volume of the cross-section polytope
/// at height one (relative to the saturated span lattice).
pub fn triangulate_and_volume(
    cone: &ConeDescription,
    height_form: Option<&[i64]>,
) -> Result<(Vec<Vec<usize>>, Option<BigRational>)> {
    if cone.rays().is_empty() {
        // all lineality: trivial decomposition, undefined volume
        return Ok((Vec::new(), None));
    }
    if cone.lineality().rank() > 0 {
        // cross-section unbounded; still triangulate the pointed quotient
        let proj = kernel_basis(cone.lineality().basis());
        let projected: Vec<Vec<Int>> = cone
            .rays()
            .iter()
            .map(|r| {
                (0..proj.rows())
                    .map(|i| proj.row(i).iter().zip(r).map(|(a, &b)| a * Int::from(b)).sum())
                    .collect()
            })
            .collect();
        let tri = placing_triangulation(&projected)?;
        return Ok((tri, None));
    }
    let coords: Vec<Vec<Int>> = cone
        .rays()
        .iter()
        .map(|r| {
            cone.span()
                .coordinates(&to_big(r))
                .expect("ray lies in the span lattice")
        })
        .collect();
    let tri = placing_triangulation(&coords)?;
    let volume = match height_form {
        None => None,
        Some(h) => {
            let mut total = BigRational::zero();
            for simplex in &tri {
                let rows: Vec<Vec<Int>> = simplex.iter().map(|&i| coords[i].clone()).collect();
                let det = determinant(&IntMatrix::from_rows(&rows)).abs();
                let mut denom = Int::one();
                for &i in simplex {
                    let height = dot_i128(h, &cone.rays()[i]);
                    if height <= 0 {
                        return Err(Error::Unsupported(
                            "height form not positive on a ray".into(),
                        ));
                    }
                    denom *= Int::from(height);
                }
                total += BigRational::new(det, denom);
            }
            Some(total)
        }
    };
    Ok((tri, volume))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn trung_hoa() -> Vec<Vec<i64>> {
        gens(&[
            &[0, 0, 1],
            &[1, 0, 1],
            &[0, 2, 1],
            &[1, 2, 1],
            &[0, 3, 1],
            &[1, 3, 1],
        ])
    }

    #[test]
    fn quadrant_dual_description() {
        let c = dual_description(&gens(&[&[2, 0], &[3, 0], &[0, 2], &[0, 3]])).unwrap();
        assert_eq!(c.facet_forms(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.lineality().rank(), 0);
    }

    #[test]
    fn trung_hoa_dual_description() {
        let c = dual_description(&trung_hoa()).unwrap();
        let mut forms = c.facet_forms().to_vec();
        forms.sort();
        assert_eq!(
            forms,
            vec![
                vec![-1, 0, 1], // z - x >= 0
                vec![0, -1, 3], // 3z - y >= 0
                vec![0, 1, 0],  // y >= 0
                vec![1, 0, 0],  // x >= 0
            ]
        );
        let mut rays = c.rays().to_vec();
        rays.sort();
        assert_eq!(
            rays,
            vec![vec![0, 0, 1], vec![0, 3, 1], vec![1, 0, 1], vec![1, 3, 1]]
        );
        // each facet form vanishes on exactly two rays
        for fi in 0..4 {
            let cnt = c.rays().iter().filter(|r| c.form_eval(fi, r) == 0).count();
            assert_eq!(cnt, 2);
        }
    }

    #[test]
    fn lineality_example() {
        let c = dual_description(&gens(&[
            &[0, 0, 2],
            &[0, 0, -2],
            &[1, 0, 0],
            &[1, 0, 1],
            &[0, 1, 0],
            &[0, 1, 1],
        ]))
        .unwrap();
        let mut forms = c.facet_forms().to_vec();
        forms.sort();
        assert_eq!(forms, vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(c.lineality().rank(), 1);
        assert!(c.lineality().contains_i64(&[0, 0, 1]).unwrap());
    }

    #[test]
    fn quadrant_face_lattice() {
        let g = gens(&[&[2, 0], &[3, 0], &[0, 2], &[0, 3]]);
        let c = dual_description(&g).unwrap();
        let l = face_lattice(&c, &g).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.face(l.bottom()).star_dim, 0);
        assert_eq!(l.face(l.top()).star_dim, 2);
        assert_eq!(l.faces_of_dim(1).count(), 2);
        // generators split between the two rays
        let dims1: Vec<Vec<usize>> = l.faces_of_dim(1).map(|f| f.generator_indices.clone()).collect();
        assert!(dims1.contains(&vec![0, 1]) && dims1.contains(&vec![2, 3]));
    }

    #[test]
    fn trung_hoa_face_lattice() {
        let g = trung_hoa();
        let c = dual_description(&g).unwrap();
        let l = face_lattice(&c, &g).unwrap();
        assert_eq!(l.len(), 10);
        assert_eq!(l.faces_of_dim(0).count(), 1);
        assert_eq!(l.faces_of_dim(1).count(), 4);
        assert_eq!(l.faces_of_dim(2).count(), 4);
        assert_eq!(l.faces_of_dim(3).count(), 1);
    }

    #[test]
    fn nonpositive_face_lattice() {
        let g = gens(&[
            &[0, 0, 2],
            &[0, 0, -2],
            &[1, 0, 0],
            &[1, 0, 1],
            &[0, 1, 0],
            &[0, 1, 1],
        ]);
        let c = dual_description(&g).unwrap();
        let l = face_lattice(&c, &g).unwrap();
        assert_eq!(l.len(), 4);
        let dims: Vec<usize> = l.faces().iter().map(|f| f.star_dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 2]);
        // units face carries the two lineality generators
        assert_eq!(l.face(l.bottom()).generator_indices, vec![0, 1]);
    }

    #[test]
    fn incidence_signs_satisfy_diamonds() {
        for g in [
            gens(&[&[2, 0], &[3, 0], &[0, 2], &[0, 3]]),
            trung_hoa(),
            gens(&[
                &[0, 0, 2],
                &[0, 0, -2],
                &[1, 0, 0],
                &[1, 0, 1],
                &[0, 1, 0],
                &[0, 1, 1],
            ]),
        ] {
            let c = dual_description(&g).unwrap();
            let mut l = face_lattice(&c, &g).unwrap();
            incidence_signs(&mut l, &c).unwrap();
            for f in 0..l.len() {
                for &(_, e) in l.covers_up(f) {
                    assert!(e == 1 || e == -1);
                }
            }
        }
    }

    #[test]
    fn volumes() {
        // triangle (0,0),(1,0),(0,2) lifted at height 1 -> normalized volume 2
        let g = gens(&[&[0, 0, 1], &[1, 0, 1], &[0, 2, 1]]);
        let c = dual_description(&g).unwrap();
        let (_, vol) = triangulate_and_volume(&c, Some(&[0, 0, 1])).unwrap();
        assert_eq!(vol.unwrap(), BigRational::from(Int::from(2)));

        // unit simplex in Z^2 lifted -> volume 1
        let g = gens(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]);
        let c = dual_description(&g).unwrap();
        let (_, vol) = triangulate_and_volume(&c, Some(&[0, 0, 1])).unwrap();
        assert_eq!(vol.unwrap(), BigRational::from(Int::from(1)));

        // Trung-Hoa rectangle cross-section [0,1]x[0,3] -> normalized volume 6
        let c = dual_description(&trung_hoa()).unwrap();
        let (tri, vol) = triangulate_and_volume(&c, Some(&[0, 0, 1])).unwrap();
        assert_eq!(vol.unwrap(), BigRational::from(Int::from(6)));
        assert_eq!(tri.len(), 2);
    }

    #[test]
    fn ray_round_trip() {
        // rays reproduce the cone: all generators satisfy the facet forms and
        // all rays satisfy them too
        let g = trung_hoa();
        let c = dual_description(&g).unwrap();
        for r in c.rays() {
            assert!(c.contains(r).unwrap());
        }
        for gen in &g {
            assert!(c.contains(gen).unwrap());
        }
        assert!(!c.contains(&[-1, 0, 1]).unwrap());
    }
}
