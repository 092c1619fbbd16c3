//! Low-level vector kernels shared by the optimizer, the lower bound and the
//! search engine: equilateral (Melzak) points, Fermat points of triangles and
//! a 2-D segment intersection test.
//!
//! All kernels operate on coordinate slices so hot paths never allocate; the
//! [`Point`] wrapper is the owned form used at API boundaries.

use thiserror::Error;

/// Errors raised by the geometric kernels.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    /// The three points of a cherry are (numerically) collinear, so the
    /// equilateral point direction is undefined.
    #[error("degenerate cherry: the three points are collinear")]
    DegenerateCherry,
    /// Operands do not share the expected dimension.
    #[error("dimension mismatch")]
    DimensionMismatch,
    /// A coordinate is NaN or infinite.
    #[error("non-finite coordinate")]
    NonFiniteCoordinate,
}

/// A point of d-space, d >= 2, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::DimensionMismatch);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFiniteCoordinate);
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

pub(crate) fn dist2(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub(crate) fn dist(u: &[f64], v: &[f64]) -> f64 {
    dist2(u, v).sqrt()
}

/// Result of an equilateral point construction for the ordered triple
/// (x1, x2, x3): the third vertex `point` of an equilateral triangle on the
/// segment x1-x2, chosen on the side of the x1-x2 line farther from x3.
#[derive(Debug, Clone)]
pub struct EquilateralPoint {
    /// The selected equilateral point e.
    pub point: Point,
    /// x2 - x1.
    pub a: Vec<f64>,
    /// x3 - x1.
    pub b: Vec<f64>,
    /// Coefficient of `a` in e = x1 + r a + t b.
    pub r: f64,
    /// Coefficient of `b` in e = x1 + r a + t b.
    pub t: f64,
    /// Area of the parallelogram spanned by `a` and `b`:
    /// sqrt(|a|^2 |b|^2 - (a.b)^2).
    pub area: f64,
}

/// Coefficients (r, t) for both apex choices plus the parallelogram area.
/// Returns `DegenerateCherry` when the triple is numerically collinear.
fn equilateral_coeffs(aa: f64, bb: f64, ab: f64) -> Result<([(f64, f64); 2], f64), GeometryError> {
    let area2 = aa * bb - ab * ab;
    let area = if area2 > 0.0 { area2.sqrt() } else { 0.0 };
    if area <= 1e-12 * (aa * bb).sqrt() {
        return Err(GeometryError::DegenerateCherry);
    }
    let s3 = 3.0_f64.sqrt();
    let r_shift = s3 * ab / (2.0 * area);
    let t_mag = s3 * aa / (2.0 * area);
    Ok(([(0.5 + r_shift, -t_mag), (0.5 - r_shift, t_mag)], area))
}

/// Allocation-free equilateral point: writes e into `out` and returns
/// (r, t, area). The apex farther from x3 is selected; for the symmetric
/// case either apex may be returned.
pub(crate) fn equilateral_into(
    x1: &[f64],
    x2: &[f64],
    x3: &[f64],
    out: &mut [f64],
) -> Result<(f64, f64, f64), GeometryError> {
    let d = x1.len();
    debug_assert!(x2.len() == d && x3.len() == d && out.len() == d);
    let mut aa = 0.0;
    let mut bb = 0.0;
    let mut ab = 0.0;
    for j in 0..d {
        let a = x2[j] - x1[j];
        let b = x3[j] - x1[j];
        aa += a * a;
        bb += b * b;
        ab += a * b;
    }
    let (opts, area) = equilateral_coeffs(aa, bb, ab)?;
    // |e - x3|^2 with e - x3 = r a + (t - 1) b, evaluated without forming e.
    let d2 = |(r, t): (f64, f64)| r * r * aa + (t - 1.0) * (t - 1.0) * bb + 2.0 * r * (t - 1.0) * ab;
    let (r, t) = if d2(opts[0]) >= d2(opts[1]) { opts[0] } else { opts[1] };
    for j in 0..d {
        let a = x2[j] - x1[j];
        let b = x3[j] - x1[j];
        out[j] = x1[j] + r * a + t * b;
    }
    Ok((r, t, area))
}

/// Equilateral point of the segment x1-x2 relative to x3: the apex of an
/// equilateral triangle erected on x1-x2, inside the plane through the three
/// points, on the side farther from x3.
pub fn equilateral_point(
    x1: &Point,
    x2: &Point,
    x3: &Point,
) -> Result<EquilateralPoint, GeometryError> {
    let d = x1.dim();
    if x2.dim() != d || x3.dim() != d {
        return Err(GeometryError::DimensionMismatch);
    }
    let mut e = vec![0.0; d];
    let (r, t, area) = equilateral_into(x1.coords(), x2.coords(), x3.coords(), &mut e)?;
    let a = x1
        .coords()
        .iter()
        .zip(x2.coords())
        .map(|(p, q)| q - p)
        .collect();
    let b = x1
        .coords()
        .iter()
        .zip(x3.coords())
        .map(|(p, q)| q - p)
        .collect();
    Ok(EquilateralPoint {
        point: Point { coords: e },
        a,
        b,
        r,
        t,
        area,
    })
}

/// True if the triangle corner at `v` (with the other vertices `p`, `q`)
/// spans an angle of at least 120 degrees. Zero-length edges count as wide.
#[inline]
fn wide_corner(v: &[f64], p: &[f64], q: &[f64]) -> bool {
    let mut uv = 0.0;
    let mut uu = 0.0;
    let mut vv = 0.0;
    for j in 0..v.len() {
        let u = p[j] - v[j];
        let w = q[j] - v[j];
        uv += u * w;
        uu += u * u;
        vv += w * w;
    }
    2.0 * uv + (uu * vv).sqrt() <= 0.0
}

/// Allocation-free Fermat point of the triangle (x1, x2, x3), written into
/// `out`. `ebuf` is scratch of the same dimension.
///
/// Corners are tested for a wide angle in the fixed order x1, x2, x3 so the
/// result is deterministic; otherwise the point is located on the segment
/// from the equilateral point through x3 (the Simpson line).
pub(crate) fn fermat_into(x1: &[f64], x2: &[f64], x3: &[f64], out: &mut [f64], ebuf: &mut [f64]) {
    if wide_corner(x1, x2, x3) {
        out.copy_from_slice(x1);
        return;
    }
    if wide_corner(x2, x1, x3) {
        out.copy_from_slice(x2);
        return;
    }
    if wide_corner(x3, x1, x2) {
        out.copy_from_slice(x3);
        return;
    }
    match equilateral_into(x1, x2, x3, ebuf) {
        Ok(_) => {}
        Err(_) => {
            // Numerically collinear but no corner triggered: the best vertex
            // is exact for collinear triples.
            let obj = |v: &[f64]| dist(v, x1) + dist(v, x2) + dist(v, x3);
            let (o1, o2, o3) = (obj(x1), obj(x2), obj(x3));
            if o1 <= o2 && o1 <= o3 {
                out.copy_from_slice(x1);
            } else if o2 <= o3 {
                out.copy_from_slice(x2);
            } else {
                out.copy_from_slice(x3);
            }
            return;
        }
    }
    let d = x1.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..d {
        let c = (x1[j] + x2[j] + ebuf[j]) / 3.0;
        let f = x3[j] - ebuf[j];
        num += (ebuf[j] - c) * f;
        den += f * f;
    }
    if den <= 0.0 {
        out.copy_from_slice(ebuf);
        return;
    }
    let t = -2.0 * num / den;
    for j in 0..d {
        out[j] = ebuf[j] + t * (x3[j] - ebuf[j]);
    }
}

/// Fermat point of a triangle: the point minimizing the sum of distances to
/// the three vertices. Returns a vertex when its angle is 120 degrees or
/// wider (vertices tested in order x1, x2, x3), the interior torsion point
/// otherwise.
pub fn fermat_point(x1: &Point, x2: &Point, x3: &Point) -> Result<Point, GeometryError> {
    let d = x1.dim();
    if x2.dim() != d || x3.dim() != d {
        return Err(GeometryError::DimensionMismatch);
    }
    let mut out = vec![0.0; d];
    let mut ebuf = vec![0.0; d];
    fermat_into(x1.coords(), x2.coords(), x3.coords(), &mut out, &mut ebuf);
    Ok(Point { coords: out })
}

/// Orientation of r relative to the directed line p -> q (cross product sign).
fn orient(p: &[f64], q: &[f64], r: &[f64]) -> f64 {
    (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
}

fn on_segment(p: &[f64], q: &[f64], r: &[f64]) -> bool {
    r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
}

/// Whether the closed segments [a1, a2] and [b1, b2] intersect in the plane.
/// Shared endpoints and collinear overlap count as intersecting.
pub fn segments_intersect_2d(
    a1: &Point,
    a2: &Point,
    b1: &Point,
    b2: &Point,
) -> Result<bool, GeometryError> {
    if a1.dim() != 2 || a2.dim() != 2 || b1.dim() != 2 || b2.dim() != 2 {
        return Err(GeometryError::DimensionMismatch);
    }
    Ok(segments_intersect_2d_raw(
        a1.coords(),
        a2.coords(),
        b1.coords(),
        b2.coords(),
    ))
}

pub(crate) fn segments_intersect_2d_raw(a1: &[f64], a2: &[f64], b1: &[f64], b2: &[f64]) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(b1, b2, a1))
        || (d2 == 0.0 && on_segment(b1, b2, a2))
        || (d3 == 0.0 && on_segment(a1, a2, b1))
        || (d4 == 0.0 && on_segment(a1, a2, b2))
}
