//! Voxel bodies, the reflection map J and its matrix representation.
//!
//! Cells live on the grid with centers at `(k + 1/2) h` along every axis, so
//! cell faces sit on integer multiples of `h`. A body whose faces meet the
//! plane `x_n = 0` reflects onto the same grid for any separation `a` that is
//! a multiple of `h`, and onto a shifted copy of it otherwise; either way the
//! pairing between a body and its image is exact.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Points are stored in three slots; unused trailing coordinates are zero.
pub type Point = [f64; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ShapeSpec {
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// Half ball with its flat face on `x_axis = center[axis]` and the dome
    /// on the low side. `axis` defaults to the last coordinate.
    Hemisphere {
        center: Vec<f64>,
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        axis: Option<usize>,
    },
    PointSet {
        points: Vec<Vec<f64>>,
    },
    /// Every grid cell inside the box is kept with probability `fill`.
    Blob {
        lo: Vec<f64>,
        hi: Vec<f64>,
        fill: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

impl ShapeSpec {
    pub fn dim(&self) -> usize {
        match self {
            ShapeSpec::Box { lo, .. } | ShapeSpec::Blob { lo, .. } => lo.len(),
            ShapeSpec::Ball { center, .. } | ShapeSpec::Hemisphere { center, .. } => center.len(),
            ShapeSpec::PointSet { points } => points.first().map_or(0, |p| p.len()),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            ShapeSpec::Box { .. } => "box",
            ShapeSpec::Ball { .. } => "ball",
            ShapeSpec::Hemisphere { .. } => "hemisphere",
            ShapeSpec::PointSet { .. } => "point-set",
            ShapeSpec::Blob { .. } => "blob",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPlane {
    pub normal_axis: usize,
    /// Plane position, `a / 2`.
    pub offset: f64,
}

impl ReflectionPlane {
    pub fn for_separation(normal_axis: usize, a: f64) -> Self {
        ReflectionPlane { normal_axis, offset: 0.5 * a }
    }

    pub fn separation(&self) -> f64 {
        2.0 * self.offset
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut q = *p;
        q[self.normal_axis] = self.separation() - p[self.normal_axis];
        q
    }
}

#[derive(Debug, Clone)]
struct Provenance {
    plane: ReflectionPlane,
    original: Arc<Vec<Point>>,
}

#[derive(Debug, Clone)]
pub struct VoxelBody {
    pub label: String,
    pub centers: Vec<Point>,
    pub h: f64,
    pub dim: usize,
    reflected_from: Option<Provenance>,
}

impl PartialEq for VoxelBody {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.centers == other.centers && self.h == other.h && self.dim == other.dim
    }
}

impl VoxelBody {
    /// Builds a body from explicit centers, checking that no two cells overlap.
    pub fn from_centers(label: impl Into<String>, centers: Vec<Point>, h: f64, dim: usize) -> Result<Self> {
        let label = label.into();
        if !(h > 0.0 && h.is_finite()) {
            return Err(invalid("h", format!("voxel edge must be positive, got {h}")));
        }
        if !(1..=3).contains(&dim) {
            return Err(invalid("dim", format!("dimension must be 1, 2 or 3, got {dim}")));
        }
        if centers.is_empty() {
            return Err(Error::EmptyBody(label));
        }
        if centers.iter().any(|c| c.iter().any(|v| !v.is_finite()) || c[dim..].iter().any(|&v| v != 0.0)) {
            return Err(invalid("centers", "coordinates must be finite and use only the first `dim` slots"));
        }
        let body = VoxelBody { label, centers, h, dim, reflected_from: None };
        if body.has_overlap() {
            return Err(Error::OverlappingVoxels(body.label));
        }
        Ok(body)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn voxel_volume(&self) -> f64 {
        self.h.powi(self.dim as i32)
    }

    pub fn volume(&self) -> f64 {
        self.voxel_volume() * self.len() as f64
    }

    /// Largest cell face coordinate along `axis`.
    pub fn max_face(&self, axis: usize) -> f64 {
        self.centers.iter().map(|c| c[axis]).fold(f64::NEG_INFINITY, f64::max) + 0.5 * self.h
    }

    pub fn min_face(&self, axis: usize) -> f64 {
        self.centers.iter().map(|c| c[axis]).fold(f64::INFINITY, f64::min) - 0.5 * self.h
    }

    pub fn translated(&self, axis: usize, shift: f64) -> VoxelBody {
        let mut out = self.clone();
        out.reflected_from = None;
        for c in &mut out.centers {
            c[axis] += shift;
        }
        out
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn has_overlap(&self) -> bool {
        // Sort along the first axis so only a narrow window needs comparing.
        let tol = self.h * (1.0 - 1e-9);
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&i, &j| self.centers[i][0].total_cmp(&self.centers[j][0]));
        for (w, &i) in idx.iter().enumerate() {
            for &j in &idx[w + 1..] {
                let (p, q) = (&self.centers[i], &self.centers[j]);
                if q[0] - p[0] >= tol {
                    break;
                }
                if (0..self.dim).all(|k| (p[k] - q[k]).abs() < tol) {
                    return true;
                }
            }
        }
        false
    }
}

fn to_point(v: &[f64], what: &'static str) -> Result<Point> {
    if v.is_empty() || v.len() > 3 {
        return Err(invalid(what, format!("expected 1 to 3 coordinates, got {}", v.len())));
    }
    let mut p = [0.0; 3];
    p[..v.len()].copy_from_slice(v);
    Ok(p)
}

/// Centers of all grid cells whose center lies inside the shape.
pub fn voxelize(shape: &ShapeSpec, h: f64) -> Result<VoxelBody> {
    voxelize_labeled(shape, h, shape.name(), 0)
}

/// As [`voxelize`], with an explicit label and a fallback seed for blobs.
pub fn voxelize_labeled(shape: &ShapeSpec, h: f64, label: &str, default_seed: u64) -> Result<VoxelBody> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid("h", format!("voxel edge must be positive, got {h}")));
    }
    let dim = shape.dim();
    if !(1..=3).contains(&dim) {
        return Err(invalid("shape", format!("dimension must be 1, 2 or 3, got {dim}")));
    }
    let centers = match shape {
        ShapeSpec::Box { lo, hi } => {
            let (lo, hi) = bounds(lo, hi, dim)?;
            grid_cells(&lo, &hi, h, dim, |p| (0..dim).all(|k| p[k] >= lo[k] && p[k] <= hi[k]))
        }
        ShapeSpec::Ball { center, radius } => {
            let c = to_point(center, "center")?;
            positive(*radius, "radius")?;
            let (lo, hi) = ball_bounds(&c, *radius, dim);
            grid_cells(&lo, &hi, h, dim, |p| dist2(p, &c) <= radius * radius)
        }
        ShapeSpec::Hemisphere { center, radius, axis } => {
            let c = to_point(center, "center")?;
            positive(*radius, "radius")?;
            let n = axis.unwrap_or(dim - 1);
            if n >= dim {
                return Err(invalid("axis", format!("axis {n} out of range for dimension {dim}")));
            }
            let (lo, mut hi) = ball_bounds(&c, *radius, dim);
            hi[n] = c[n];
            grid_cells(&lo, &hi, h, dim, |p| p[n] < c[n] && dist2(p, &c) <= radius * radius)
        }
        ShapeSpec::PointSet { points } => {
            if points.iter().any(|p| p.len() != dim) {
                return Err(invalid("points", "all points must have the same dimension"));
            }
            points.iter().map(|p| to_point(p, "points")).collect::<Result<Vec<_>>>()?
        }
        ShapeSpec::Blob { lo, hi, fill, seed } => {
            let (lo, hi) = bounds(lo, hi, dim)?;
            if !(*fill > 0.0 && *fill <= 1.0) {
                return Err(invalid("fill", format!("fill fraction must be in (0, 1], got {fill}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(default_seed));
            let cells = grid_cells(&lo, &hi, h, dim, |p| (0..dim).all(|k| p[k] >= lo[k] && p[k] <= hi[k]));
            let mut kept: Vec<Point> = cells.iter().copied().filter(|_| rng.random::<f64>() < *fill).collect();
            if kept.is_empty() && !cells.is_empty() {
                kept.push(cells[rng.random_range(0..cells.len())]);
            }
            kept
        }
    };
    if centers.is_empty() {
        return Err(Error::EmptyBody(label.to_string()));
    }
    VoxelBody::from_centers(label, centers, h, dim)
}

fn positive(v: f64, name: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive, got {v}")))
    }
}

fn bounds(lo: &[f64], hi: &[f64], dim: usize) -> Result<(Point, Point)> {
    if hi.len() != dim {
        return Err(invalid("hi", "lo and hi must have the same length"));
    }
    let (lo, hi) = (to_point(lo, "lo")?, to_point(hi, "hi")?);
    if (0..dim).any(|k| !(hi[k] > lo[k])) {
        return Err(invalid("hi", "every hi coordinate must exceed lo"));
    }
    Ok((lo, hi))
}

fn ball_bounds(c: &Point, r: f64, dim: usize) -> (Point, Point) {
    let mut lo = *c;
    let mut hi = *c;
    for k in 0..dim {
        lo[k] -= r;
        hi[k] += r;
    }
    (lo, hi)
}

fn dist2(p: &Point, q: &Point) -> f64 {
    (0..3).map(|k| (p[k] - q[k]).powi(2)).sum()
}

fn grid_cells(lo: &Point, hi: &Point, h: f64, dim: usize, inside: impl Fn(&Point) -> bool) -> Vec<Point> {
    let range = |k: usize| -> (i64, i64) {
        if k >= dim {
            return (0, 0);
        }
        ((lo[k] / h - 0.5).floor() as i64 - 1, (hi[k] / h - 0.5).ceil() as i64 + 1)
    };
    let (r0, r1, r2) = (range(0), range(1), range(2));
    let coord = |i: i64| (i as f64 + 0.5) * h;
    let mut out = Vec::new();
    for i in r0.0..=r0.1 {
        for j in r1.0..=r1.1 {
            for k in r2.0..=r2.1 {
                let mut p = [coord(i), coord(j), coord(k)];
                p[dim..].iter_mut().for_each(|v| *v = 0.0);
                if inside(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Mirror image of a body that lies strictly on one side of the plane.
///
/// Reflecting a reflected body through the same plane hands back the
/// original coordinates bit for bit.
pub fn reflect_body(body: &VoxelBody, plane: &ReflectionPlane) -> Result<VoxelBody> {
    let n = plane.normal_axis;
    if n >= body.dim {
        return Err(invalid("normal_axis", format!("axis {n} out of range for dimension {}", body.dim)));
    }
    let (lo, hi) = (body.min_face(n), body.max_face(n));
    if !(hi < plane.offset || lo > plane.offset) {
        let extent = if hi >= plane.offset && lo < plane.offset { hi } else { lo };
        return Err(Error::CrossesPlane { label: body.label.clone(), axis: n, extent, plane: plane.offset });
    }
    if let Some(prov) = &body.reflected_from {
        if prov.plane == *plane {
            let mut out = body.clone();
            out.centers = prov.original.as_ref().clone();
            out.reflected_from = Some(Provenance { plane: *plane, original: Arc::new(body.centers.clone()) });
            return Ok(out);
        }
    }
    let centers = body.centers.iter().map(|c| plane.apply(c)).collect();
    Ok(VoxelBody {
        label: format!("{}'", body.label),
        centers,
        h: body.h,
        dim: body.dim,
        reflected_from: Some(Provenance { plane: *plane, original: Arc::new(body.centers.clone()) }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignRule {
    Scalar,
    /// Transverse components keep their sign, the normal component flips.
    Vector,
}

/// The unitary map from functions on A to functions on B induced by J.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionOperator {
    /// Voxel `k` of A is the mirror image of voxel `pairing[k]` of B.
    pub pairing: Vec<usize>,
    pub sign_rule: SignRule,
    pub normal_axis: usize,
}

impl ReflectionOperator {
    pub fn components(&self) -> usize {
        match self.sign_rule {
            SignRule::Scalar => 1,
            SignRule::Vector => 3,
        }
    }

    pub fn sign(&self, component: usize) -> f64 {
        match self.sign_rule {
            SignRule::Vector if component == self.normal_axis => -1.0,
            _ => 1.0,
        }
    }

    /// Dense matrix with rows on B and columns on A. Components are stored
    /// in coordinate order (x, y, z), the one on `normal_axis` flipping sign.
    pub fn to_matrix(&self) -> faer::Mat<f64> {
        let c = self.components();
        let n = self.pairing.len() * c;
        let mut m = faer::Mat::<f64>::zeros(n, n);
        for (k, &j) in self.pairing.iter().enumerate() {
            for s in 0..c {
                m[(j * c + s, k * c + s)] = self.sign(s);
            }
        }
        m
    }

    /// `G J` for a block `G` with rows on A and columns on B.
    pub fn right_apply(&self, g: faer::MatRef<'_, f64>) -> faer::Mat<f64> {
        let c = self.components();
        faer::Mat::from_fn(g.nrows(), self.pairing.len() * c, |i, col| {
            let (k, s) = (col / c, col % c);
            self.sign(s) * g[(i, self.pairing[k] * c + s)]
        })
    }
}

/// Pairs every voxel of `a` with its mirror image in `b`.
pub fn reflection_matrix(
    a: &VoxelBody,
    b: &VoxelBody,
    plane: &ReflectionPlane,
    sign_rule: SignRule,
) -> Result<ReflectionOperator> {
    if a.len() != b.len() {
        return Err(Error::NotMirrorImages(format!("{} voxels vs {}", a.len(), b.len())));
    }
    if a.h != b.h || a.dim != b.dim {
        return Err(Error::NotMirrorImages("voxel edge or dimension differs".into()));
    }
    let tol = 1e-12 * a.h;
    let key = |p: &Point| (p[0], p[1], p[2]);
    let mut order: Vec<usize> = (0..b.len()).collect();
    order.sort_by(|&i, &j| key(&b.centers[i]).partial_cmp(&key(&b.centers[j])).unwrap());
    let mut used = vec![false; b.len()];
    let mut pairing = Vec::with_capacity(a.len());
    for (k, p) in a.centers.iter().enumerate() {
        let q = plane.apply(p);
        // Binary search on the first coordinate, then scan the tolerance window.
        let start = order.partition_point(|&j| b.centers[j][0] < q[0] - tol);
        let hit = order[start..]
            .iter()
            .take_while(|&&j| b.centers[j][0] <= q[0] + tol)
            .copied()
            .find(|&j| !used[j] && (0..3).all(|s| (b.centers[j][s] - q[s]).abs() <= tol));
        match hit {
            Some(j) => {
                used[j] = true;
                pairing.push(j);
            }
            None => return Err(Error::NotMirrorImages(format!("voxel {k} of `{}` has no image in `{}`", a.label, b.label))),
        }
    }
    Ok(ReflectionOperator { pairing, sign_rule, normal_axis: plane.normal_axis })
}

/// Smallest surface-to-surface distance between cells of the two bodies.
///
/// Cells are axis-aligned cubes of edge `h`, so for a pair of centers the
/// per-axis gap is `|dx_k| - h`. Disjoint pairs report the Euclidean length
/// of the positive gaps; touching or interpenetrating pairs report the
/// (non-positive) largest per-axis gap.
pub fn min_separation(a: &VoxelBody, b: &VoxelBody) -> f64 {
    let h = 0.5 * (a.h + b.h);
    let dim = a.dim.max(b.dim);
    let mut best = f64::INFINITY;
    for p in &a.centers {
        for q in &b.centers {
            let mut sq = 0.0;
            let mut worst = f64::NEG_INFINITY;
            for k in 0..dim {
                let g = (p[k] - q[k]).abs() - h;
                worst = worst.max(g);
                if g > 0.0 {
                    sq += g * g;
                }
            }
            let d = if worst > 0.0 { sq.sqrt() } else { worst };
            best = best.min(d);
        }
    }
    best
}

/// Rejects bodies that touch or overlap.
pub fn check_separated(a: &VoxelBody, b: &VoxelBody) -> Result<f64> {
    let d = min_separation(a, b);
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::Overlap(d))
    }
}

/// Smallest center-to-center distance between the two bodies.
pub fn min_center_distance(a: &VoxelBody, b: &VoxelBody) -> f64 {
    let mut best = f64::INFINITY;
    for p in &a.centers {
        for q in &b.centers {
            best = best.min(dist2(p, q));
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(h: f64) -> VoxelBody {
        voxelize(&ShapeSpec::Box { lo: vec![0.0; 3], hi: vec![1.0; 3] }, h).unwrap()
    }

    #[test]
    fn box_counts() {
        let b = cube(0.5);
        assert_eq!(b.len(), 8);
        assert_eq!(b.voxel_volume(), 0.125);
    }

    #[test]
    fn tiny_ball_is_one_cell() {
        let h = 0.3;
        let shape = ShapeSpec::Ball { center: vec![0.5 * h, 0.5 * h, 0.5 * h], radius: 0.25 * h };
        assert_eq!(voxelize(&shape, h).unwrap().len(), 1);
    }

    #[test]
    fn empty_shape_rejected() {
        let shape = ShapeSpec::Ball { center: vec![0.0, 0.0, 0.0], radius: 0.1 };
        assert!(matches!(voxelize(&shape, 1.0), Err(Error::EmptyBody(_))));
    }

    #[test]
    fn hemisphere_volume_converges() {
        let exact = 2.0 / 3.0 * std::f64::consts::PI;
        let mut errs = vec![];
        for h in [0.25, 0.125] {
            let shape = ShapeSpec::Hemisphere { center: vec![0.0; 3], radius: 1.0, axis: None };
            let b = voxelize(&shape, h).unwrap();
            assert!(b.max_face(2) <= 0.0);
            errs.push((b.volume() - exact).abs() / exact);
        }
        assert!(errs[1] < 0.1, "{errs:?}");
    }

    #[test]
    fn single_voxel_reflection() {
        let b = VoxelBody::from_centers("p", vec![[0.0, 0.0, -1.0]], 0.1, 3).unwrap();
        let plane = ReflectionPlane { normal_axis: 2, offset: 0.5 };
        let r = reflect_body(&b, &plane).unwrap();
        assert_eq!(r.centers, vec![[0.0, 0.0, 2.0]]);
    }

    #[test]
    fn reflection_is_bitwise_involution() {
        let shape = ShapeSpec::Hemisphere { center: vec![0.1, 0.0, 0.0], radius: 1.0, axis: None };
        let a = voxelize(&shape, 0.17).unwrap();
        let plane = ReflectionPlane::for_separation(2, 0.3333);
        let b = reflect_body(&a, &plane).unwrap();
        let back = reflect_body(&b, &plane).unwrap();
        assert_eq!(back.centers, a.centers);
        let again = reflect_body(&back, &plane).unwrap();
        assert_eq!(again.centers, b.centers);
    }

    #[test]
    fn crossing_plane_rejected() {
        let a = cube(0.5);
        let plane = ReflectionPlane { normal_axis: 2, offset: 0.5 };
        assert!(matches!(reflect_body(&a, &plane), Err(Error::CrossesPlane { .. })));
    }

    #[test]
    fn reflection_matrix_small_cases() {
        let a = VoxelBody::from_centers("p", vec![[0.0, 0.0, -1.0]], 0.1, 3).unwrap();
        let plane = ReflectionPlane { normal_axis: 2, offset: 0.5 };
        let b = reflect_body(&a, &plane).unwrap();
        let s = reflection_matrix(&a, &b, &plane, SignRule::Scalar).unwrap().to_matrix();
        assert_eq!((s.nrows(), s[(0, 0)]), (1, 1.0));
        let v = reflection_matrix(&a, &b, &plane, SignRule::Vector).unwrap().to_matrix();
        let diag: Vec<f64> = (0..3).map(|i| v[(i, i)]).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0]);
        assert_eq!(v[(0, 1)], 0.0);
    }

    #[test]
    fn reflection_matrix_orthogonal_for_permuted_cube() {
        let a = cube(0.5).translated(2, -1.0);
        let plane = ReflectionPlane::for_separation(2, 0.5);
        let mut b = reflect_body(&a, &plane).unwrap();
        b.centers.reverse();
        for rule in [SignRule::Scalar, SignRule::Vector] {
            let j = reflection_matrix(&a, &b, &plane, rule).unwrap().to_matrix();
            let jtj = j.transpose() * &j;
            let n = jtj.nrows();
            for r in 0..n {
                for c in 0..n {
                    let want = if r == c { 1.0 } else { 0.0 };
                    assert!((jtj[(r, c)] - want).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn non_mirror_rejected() {
        let a = cube(0.5).translated(2, -1.0);
        let plane = ReflectionPlane::for_separation(2, 0.5);
        let b = a.translated(2, 1.5).translated(0, 0.1);
        assert!(matches!(reflection_matrix(&a, &b, &plane, SignRule::Scalar), Err(Error::NotMirrorImages(_))));
    }

    #[test]
    fn separations() {
        let h = 0.01;
        let a = VoxelBody::from_centers("a", vec![[0.0, 0.0, -1.0]], h, 3).unwrap();
        let b = VoxelBody::from_centers("b", vec![[0.0, 0.0, 1.0]], h, 3).unwrap();
        assert!((min_separation(&a, &b) - (2.0 - h)).abs() < 1e-12);

        let hemi = voxelize(&ShapeSpec::Hemisphere { center: vec![0.0; 3], radius: 1.0, axis: None }, 0.25).unwrap();
        let a_sep = 0.75;
        let img = reflect_body(&hemi, &ReflectionPlane::for_separation(2, a_sep)).unwrap();
        let expect = a_sep - 2.0 * hemi.max_face(2);
        assert!((min_separation(&hemi, &img) - expect).abs() < 1e-12);

        let c = cube(0.5);
        assert!(matches!(check_separated(&c, &c.translated(0, 0.5)), Err(Error::Overlap(_))));
    }

    #[test]
    fn overlapping_points_rejected() {
        let r = VoxelBody::from_centers("x", vec![[0.0, 0.0, 0.0], [0.05, 0.0, 0.0]], 0.1, 1);
        assert!(matches!(r, Err(Error::OverlappingVoxels(_))));
    }

    #[test]
    fn blob_is_seeded() {
        let shape = ShapeSpec::Blob { lo: vec![-1.0, -1.0, -1.0], hi: vec![1.0, 1.0, 0.0], fill: 0.5, seed: Some(3) };
        let a = voxelize(&shape, 0.25).unwrap();
        let b = voxelize(&shape, 0.25).unwrap();
        assert_eq!(a.centers, b.centers);
        assert!(a.len() > 90 && a.len() < 170, "{}", a.len());
    }
}
