//! Tunnel scene, ray paths and their upper envelope.
//!
//! Every available path is a piecewise-linear function of the longitudinal
//! coordinate `z` on `[0, z_r]`. An obstacle at `d_o` with height `h_o`
//! blocks the link iff `h_o >= envelope(d_o)`, so under uniform obstacle
//! statistics the blocking probability is the area between the ceiling and
//! the envelope, scaled by `1 / (h z_r)`.

use crate::error::{BpError, Result};

/// Crossings closer than this (meters, along `z`) collapse into one
/// envelope breakpoint.
pub const MERGE_TOL: f64 = 1e-9;

/// The 2-D scene. The transmitter is fixed at `z = 0` and every RIS is
/// mounted on the ceiling at `y = h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelGeometry {
    h: f64,
    y_t: f64,
    y_r: f64,
    z_r: f64,
}

impl TunnelGeometry {
    pub fn new(h: f64, y_t: f64, y_r: f64, z_r: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(BpError::InvalidGeometry("h > 0"));
        }
        if !(y_t.is_finite() && y_t > 0.0) {
            return Err(BpError::InvalidGeometry("0 < y_t"));
        }
        if y_t >= h {
            return Err(BpError::InvalidGeometry("y_t < h"));
        }
        if !(y_r.is_finite() && y_r > 0.0) {
            return Err(BpError::InvalidGeometry("0 < y_r"));
        }
        if y_r >= h {
            return Err(BpError::InvalidGeometry("y_r < h"));
        }
        if !(z_r.is_finite() && z_r > 0.0) {
            return Err(BpError::InvalidGeometry("z_r > 0"));
        }
        Ok(Self { h, y_t, y_r, z_r })
    }

    /// Tunnel height.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Transmitter height.
    pub fn y_t(&self) -> f64 {
        self.y_t
    }

    /// Receiver height.
    pub fn y_r(&self) -> f64 {
        self.y_r
    }

    /// Receiver longitudinal coordinate.
    pub fn z_r(&self) -> f64 {
        self.z_r
    }

    /// Density normalizer `1 / (h z_r)` of the uniform obstacle model.
    pub fn normalizer(&self) -> f64 {
        1.0 / (self.h * self.z_r)
    }

    pub fn with_h(&self, h: f64) -> Result<Self> {
        Self::new(h, self.y_t, self.y_r, self.z_r)
    }

    pub fn with_y_t(&self, y_t: f64) -> Result<Self> {
        Self::new(self.h, y_t, self.y_r, self.z_r)
    }

    pub fn with_y_r(&self, y_r: f64) -> Result<Self> {
        Self::new(self.h, self.y_t, y_r, self.z_r)
    }

    pub fn with_z_r(&self, z_r: f64) -> Result<Self> {
        Self::new(self.h, self.y_t, self.y_r, z_r)
    }

    /// `z` of the specular ceiling reflection point.
    pub fn z_f(&self) -> f64 {
        apex_z(self.h, self.y_t, self.y_r, self.z_r)
    }

    /// `z` where the straight Tx-Rx line meets the ceiling, when it rises.
    pub fn z_n(&self) -> Option<f64> {
        let k4 = (self.y_r - self.y_t) / self.z_r;
        (k4 > 0.0).then(|| self.z_r + (self.h - self.y_r) / k4)
    }
}

/// Image-method reflection point on the ceiling.
///
/// Mirroring Tx across `y = h` gives the image at height `2h - y_t`; the line
/// from the image to Rx meets the ceiling at `z_r (h - y_t) / (2h - y_t - y_r)`.
/// Returns 0 when the transmitter is at (or above) ceiling level.
pub fn apex_z(h: f64, y_t: f64, y_r: f64, z_r: f64) -> f64 {
    let rise_t = h - y_t;
    if rise_t <= 0.0 {
        return 0.0;
    }
    z_r * rise_t / (rise_t + (h - y_r))
}

/// The ceiling point `(z_F, h)` of the specular path.
pub fn snell_apex(geom: &TunnelGeometry) -> (f64, f64) {
    (geom.z_f(), geom.h)
}

/// Ceiling-mounted RIS positions, strictly ascending, all `>= 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RisPlacement(Vec<f64>);

impl RisPlacement {
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        for &z in &positions {
            if !(z.is_finite() && z >= 0.0) {
                return Err(BpError::InvalidPlacement(format!(
                    "position {z} is not a finite coordinate >= 0"
                )));
            }
        }
        if let Some(w) = positions.windows(2).find(|w| w[0] >= w[1]) {
            return Err(BpError::InvalidPlacement(format!(
                "positions must be strictly ascending ({} >= {})",
                w[0], w[1]
            )));
        }
        Ok(Self(positions))
    }

    /// Sorts the positions and drops duplicates closer than [`MERGE_TOL`].
    pub fn from_unsorted(mut positions: Vec<f64>) -> Result<Self> {
        positions.sort_by(f64::total_cmp);
        positions.dedup_by(|b, a| (*b - *a).abs() <= MERGE_TOL);
        Self::new(positions)
    }

    pub fn none() -> Self {
        Self(Vec::new())
    }

    pub fn single(z_ris: f64) -> Result<Self> {
        Self::new(vec![z_ris])
    }

    pub fn positions(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathLabel {
    Snell,
    /// Index into the [`RisPlacement`].
    Ris(usize),
}

/// A polyline from the transmitter towards the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct RayPath {
    vertices: Vec<(f64, f64)>,
    label: PathLabel,
}

impl RayPath {
    pub fn new(vertices: Vec<(f64, f64)>, label: PathLabel) -> Self {
        Self { vertices, label }
    }

    /// `(z, y)` vertices in order of travel.
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn label(&self) -> PathLabel {
        self.label
    }

    /// Non-vertical segments. Vertical legs have no longitudinal extent and
    /// cannot be hit by an obstacle located at a continuous random `z`.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices
            .windows(2)
            .filter(|w| w[1].0 > w[0].0)
            .map(|w| Segment::new(w[0], w[1]))
    }

    /// Height of the path at `z`, or `None` outside its extent.
    pub fn height_at(&self, z: f64) -> Option<f64> {
        self.segments()
            .filter(|s| s.covers(z, 0.0))
            .map(|s| s.at(z))
            .reduce(f64::max)
    }

    fn z_end(&self) -> f64 {
        self.vertices.last().map_or(0.0, |v| v.0)
    }
}

/// A non-vertical straight piece of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub z0: f64,
    pub y0: f64,
    pub z1: f64,
    pub y1: f64,
}

impl Segment {
    fn new(a: (f64, f64), b: (f64, f64)) -> Self {
        Self {
            z0: a.0,
            y0: a.1,
            z1: b.0,
            y1: b.1,
        }
    }

    pub fn slope(&self) -> f64 {
        (self.y1 - self.y0) / (self.z1 - self.z0)
    }

    pub fn at(&self, z: f64) -> f64 {
        // Interpolate from the nearer end to keep endpoint values exact.
        if z - self.z0 <= self.z1 - z {
            self.y0 + self.slope() * (z - self.z0)
        } else {
            self.y1 + self.slope() * (z - self.z1)
        }
    }

    fn covers(&self, z: f64, tol: f64) -> bool {
        z >= self.z0 - tol && z <= self.z1 + tol
    }

    /// `z` where the two supporting lines cross, if it falls on both pieces.
    fn crossing(&self, other: &Segment) -> Option<f64> {
        let (sa, sb) = (self.slope(), other.slope());
        let ds = sa - sb;
        if ds.abs() <= 1e-15 * (sa.abs() + sb.abs()).max(1e-300) {
            return None;
        }
        // Evaluate both lines about a shared anchor for accuracy.
        let anchor = self.z0.max(other.z0);
        let z = anchor + (other.at(anchor) - self.at(anchor)) / ds;
        let lo = self.z0.max(other.z0);
        let hi = self.z1.min(other.z1);
        (z > lo && z < hi).then_some(z)
    }
}

/// The specular path plus one Tx-RIS-Rx path per RIS.
///
/// A RIS beyond the receiver (`z_R > z_r`) contributes only its Tx-RIS leg
/// clipped at `z_r`; the return leg lies outside the obstacle support.
pub fn build_paths(geom: &TunnelGeometry, ris: &RisPlacement) -> Vec<RayPath> {
    let (h, y_t, y_r, z_r) = (geom.h, geom.y_t, geom.y_r, geom.z_r);
    let tx = (0.0, y_t);
    let rx = (z_r, y_r);
    let mut paths = Vec::with_capacity(ris.len() + 1);
    paths.push(RayPath::new(
        vec![tx, (geom.z_f(), h), rx],
        PathLabel::Snell,
    ));
    for (i, &z_ris) in ris.positions().iter().enumerate() {
        let vertices = if z_ris <= z_r {
            vec![tx, (z_ris, h), rx]
        } else {
            vec![tx, (z_r, y_t + (h - y_t) * z_r / z_ris)]
        };
        paths.push(RayPath::new(vertices, PathLabel::Ris(i)));
    }
    paths
}

/// Pointwise maximum of a set of paths, as a piecewise-linear function.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnvelope {
    breakpoints: Vec<(f64, f64)>,
}

impl PathEnvelope {
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// Right end of the domain (the receiver coordinate).
    pub fn z_end(&self) -> f64 {
        self.breakpoints.last().map_or(0.0, |b| b.0)
    }

    /// Envelope height at `z`, clamped to the domain.
    pub fn eval(&self, z: f64) -> f64 {
        let bp = &self.breakpoints;
        let i = bp.partition_point(|&(bz, _)| bz <= z);
        if i == 0 {
            return bp[0].1;
        }
        if i == bp.len() {
            return bp[i - 1].1;
        }
        let (z0, y0) = bp[i - 1];
        let (z1, y1) = bp[i];
        y0 + (y1 - y0) * (z - z0) / (z1 - z0)
    }
}

/// Upper envelope over `[0, z_end]` of the given paths.
///
/// Breakpoints are the path vertices plus every pairwise crossing; points
/// within [`MERGE_TOL`] are merged and collinear points are dropped.
pub fn build_envelope(paths: &[RayPath]) -> Result<PathEnvelope> {
    if paths.is_empty() {
        return Err(BpError::InvalidArgument(
            "an envelope needs at least one path".into(),
        ));
    }
    let z_end = paths.iter().map(RayPath::z_end).fold(0.0, f64::max);
    let segments: Vec<Segment> = paths.iter().flat_map(|p| p.segments()).collect();
    if segments.is_empty() || z_end <= 0.0 {
        return Err(BpError::InvalidArgument(
            "paths have no longitudinal extent".into(),
        ));
    }

    let mut zs: Vec<f64> = vec![0.0, z_end];
    for s in &segments {
        zs.push(s.z0);
        zs.push(s.z1);
    }
    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            if let Some(z) = a.crossing(b) {
                zs.push(z);
            }
        }
    }
    zs.retain(|&z| (0.0..=z_end).contains(&z));
    zs.sort_by(f64::total_cmp);
    // Merge ties, keeping the exact domain ends.
    let mut merged: Vec<f64> = Vec::with_capacity(zs.len());
    for z in zs {
        match merged.last() {
            Some(&last) if z - last <= MERGE_TOL => {
                if z == z_end {
                    *merged.last_mut().unwrap() = z_end;
                }
            }
            _ => merged.push(z),
        }
    }

    let height = |z: f64| -> f64 {
        segments
            .iter()
            .filter(|s| s.covers(z, MERGE_TOL))
            .map(|s| s.at(z.clamp(s.z0, s.z1)))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let raw: Vec<(f64, f64)> = merged.into_iter().map(|z| (z, height(z))).collect();

    let mut breakpoints: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (i, &p) in raw.iter().enumerate() {
        if i > 0 && i + 1 < raw.len() {
            let (a, b) = (*breakpoints.last().unwrap(), raw[i + 1]);
            let interp = a.1 + (b.1 - a.1) * (p.0 - a.0) / (b.0 - a.0);
            if (interp - p.1).abs() <= 1e-12 * (1.0 + p.1.abs()) {
                continue;
            }
        }
        breakpoints.push(p);
    }
    Ok(PathEnvelope { breakpoints })
}

/// Envelope of the specular path and every RIS path.
pub fn envelope_for(geom: &TunnelGeometry, ris: &RisPlacement) -> PathEnvelope {
    build_envelope(&build_paths(geom, ris)).expect("the specular path always has extent")
}

/// `∫ (h - env(z)) dz` over the envelope domain, by exact trapezoids.
pub fn area_above_envelope(env: &PathEnvelope, h: f64) -> f64 {
    env.breakpoints
        .windows(2)
        .map(|w| {
            let ((z0, y0), (z1, y1)) = (w[0], w[1]);
            (z1 - z0) * ((h - y0) + (h - y1)) * 0.5
        })
        .sum::<f64>()
        .max(0.0)
}

/// Blocking probability for a single uniform obstacle, from the envelope area.
pub fn oracle_bp(geom: &TunnelGeometry, ris: &RisPlacement) -> f64 {
    area_above_envelope(&envelope_for(geom, ris), geom.h) * geom.normalizer()
}

/// Single-RIS configuration classes of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `0 <= z_R <= z_F`.
    Case1,
    /// `z_F < z_R <= z_r`.
    Case2,
    /// `y_t >= y_r`, `z_R > z_r`.
    Case3,
    /// `y_t < y_r`, `z_r < z_R <= z_N`.
    Case4BelowZn,
    /// `y_t < y_r`, `z_R > z_N`: the RIS path never rises above the
    /// specular one.
    Case4AboveZn,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [
        CaseId::Case1,
        CaseId::Case2,
        CaseId::Case3,
        CaseId::Case4BelowZn,
        CaseId::Case4AboveZn,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::Case1 => "case1",
            CaseId::Case2 => "case2",
            CaseId::Case3 => "case3",
            CaseId::Case4BelowZn => "case4_below_zN",
            CaseId::Case4AboveZn => "case4_above_zN",
        }
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_case(geom: &TunnelGeometry, z_ris: f64) -> CaseId {
    if z_ris <= geom.z_f() {
        CaseId::Case1
    } else if z_ris <= geom.z_r {
        CaseId::Case2
    } else if geom.y_t >= geom.y_r {
        CaseId::Case3
    } else {
        match geom.z_n() {
            Some(z_n) if z_ris > z_n => CaseId::Case4AboveZn,
            _ => CaseId::Case4BelowZn,
        }
    }
}

/// Slopes and intersection points of a single-RIS configuration.
///
/// Quantities whose defining denominator vanishes are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseGeometry {
    /// Slope of the image-to-Rx line.
    pub k_prime: f64,
    pub z_f: f64,
    /// `1 / (h z_r)`.
    pub c: f64,
    /// Tx-RIS slope.
    pub k0: Option<f64>,
    /// RIS-Rx slope.
    pub k1: Option<f64>,
    /// Tx-F slope.
    pub k2: Option<f64>,
    /// F-Rx slope.
    pub k3: Option<f64>,
    /// Tx-Rx slope.
    pub k4: Option<f64>,
    pub z_n: Option<f64>,
    /// Crossing of Tx-F and RIS-Rx.
    pub z_c1: Option<f64>,
    /// Crossing of F-Rx and Tx-RIS.
    pub z_c2: Option<f64>,
    /// Same crossing as `z_c2`, used when the RIS is beyond the receiver.
    pub z_c3: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

impl CaseGeometry {
    pub fn new(geom: &TunnelGeometry, z_ris: f64) -> Self {
        let (h, y_t, y_r, z_r) = (geom.h, geom.y_t, geom.y_r, geom.z_r);
        let k_prime = (y_r - 2.0 * h + y_t) / z_r;
        let z_f = geom.z_f();
        let k0 = ratio(h - y_t, z_ris);
        let k1 = ratio(h - y_r, z_ris - z_r);
        let k2 = ratio(h - y_t, z_f);
        let k3 = ratio(y_r - h, z_r - z_f);
        let k4 = ratio(y_r - y_t, z_r);
        let z_n = k4.and_then(|k4| ratio(h - y_r + k4 * z_r, k4));
        let z_c1 = match (k1, k2) {
            (Some(k1), Some(k2)) => ratio(-k2 * z_f + k1 * z_ris, k1 - k2),
            _ => None,
        };
        let z_c2 = match (k0, k3) {
            (Some(k0), Some(k3)) => ratio(y_t - y_r + k3 * z_r, k3 - k0),
            _ => None,
        };
        Self {
            k_prime,
            z_f,
            c: geom.normalizer(),
            k0,
            k1,
            k2,
            k3,
            k4,
            z_n,
            z_c1,
            z_c2,
            z_c3: z_c2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> TunnelGeometry {
        TunnelGeometry::new(4.0, 2.0, 2.0, 100.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn geometry_invariants() {
        assert_eq!(
            TunnelGeometry::new(4.0, 5.0, 2.0, 100.0),
            Err(BpError::InvalidGeometry("y_t < h"))
        );
        assert!(TunnelGeometry::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(TunnelGeometry::new(4.0, 2.0, 4.0, 1.0).is_err());
        assert!(TunnelGeometry::new(4.0, 2.0, 2.0, 0.0).is_err());
        assert!(TunnelGeometry::new(4.0, 0.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn apex_by_image_method() {
        assert_eq!(snell_apex(&sym()), (50.0, 4.0));
        let g = TunnelGeometry::new(4.0, 3.0, 3.0, 37.0).unwrap();
        assert!(close(g.z_f(), 18.5, 1e-12));
        assert_eq!(apex_z(4.0, 4.0, 2.0, 100.0), 0.0);
        assert!(apex_z(4.0, 4.0 - 1e-12, 2.0, 100.0) < 1e-9);
    }

    #[test]
    fn apex_matches_image_line_form() {
        for &(h, y_t, y_r, z_r) in &[(4.0, 3.5, 2.5, 100.0), (7.0, 1.0, 6.0, 13.0)] {
            let g = TunnelGeometry::new(h, y_t, y_r, z_r).unwrap();
            let k_prime = (y_r - 2.0 * h + y_t) / z_r;
            let z_f = (h - y_r + k_prime * z_r) / k_prime;
            assert!(close(g.z_f(), z_f, 1e-9));
        }
    }

    #[test]
    fn placement_ordering() {
        assert!(RisPlacement::new(vec![10.0, 5.0]).is_err());
        assert!(RisPlacement::new(vec![5.0, 5.0]).is_err());
        assert!(RisPlacement::new(vec![-1.0]).is_err());
        let p = RisPlacement::from_unsorted(vec![50.0, 0.0, 50.0]).unwrap();
        assert_eq!(p.positions(), &[0.0, 50.0]);
        assert!(RisPlacement::none().is_empty());
    }

    #[test]
    fn paths_no_ris() {
        let paths = build_paths(&sym(), &RisPlacement::none());
        assert_eq!(paths.len(), 1);
        assert_eq!(
            paths[0].vertices(),
            &[(0.0, 2.0), (50.0, 4.0), (100.0, 2.0)]
        );
        assert_eq!(paths[0].label(), PathLabel::Snell);
    }

    #[test]
    fn ris_at_apex_coincides_with_snell() {
        let paths = build_paths(&sym(), &RisPlacement::single(50.0).unwrap());
        assert_eq!(paths[0].vertices(), paths[1].vertices());
    }

    #[test]
    fn ris_beyond_receiver_is_clipped() {
        let paths = build_paths(&sym(), &RisPlacement::single(120.0).unwrap());
        let v = paths[1].vertices();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], (0.0, 2.0));
        assert_eq!(v[1].0, 100.0);
        assert!(close(v[1].1, 2.0 + 100.0 * 2.0 / 120.0, 1e-12));
    }

    #[test]
    fn envelope_with_ris_at_receiver() {
        let env = envelope_for(&sym(), &RisPlacement::single(100.0).unwrap());
        let bp = env.breakpoints();
        assert_eq!(bp.len(), 4);
        let expect = [
            (0.0, 2.0),
            (50.0, 4.0),
            (200.0 / 3.0, 10.0 / 3.0),
            (100.0, 4.0),
        ];
        for (a, b) in bp.iter().zip(expect) {
            assert!(
                close(a.0, b.0, 1e-9) && close(a.1, b.1, 1e-9),
                "{a:?} vs {b:?}"
            );
        }
    }

    #[test]
    fn envelope_of_single_path_is_path() {
        let paths = build_paths(&sym(), &RisPlacement::none());
        let env = build_envelope(&paths).unwrap();
        assert_eq!(env.breakpoints(), paths[0].vertices());
        assert!(build_envelope(&[]).is_err());
    }

    #[test]
    fn ceiling_level_tx_envelope() {
        let g = TunnelGeometry::new(4.0, 4.0 - 1e-9, 2.0, 100.0).unwrap();
        let env = envelope_for(&g, &RisPlacement::single(60.0).unwrap());
        for z in [1e-3, 10.0, 30.0, 59.9] {
            assert!(close(env.eval(z), 4.0, 1e-8));
        }
        assert!(close(env.eval(80.0), 3.0, 1e-8));
        assert!(close(area_above_envelope(&env, 4.0), 40.0, 1e-6));
    }

    #[test]
    fn areas() {
        let g = sym();
        let no_ris = envelope_for(&g, &RisPlacement::none());
        assert!(close(area_above_envelope(&no_ris, 4.0), 100.0, 1e-9));
        let two = envelope_for(&g, &RisPlacement::new(vec![0.0, 100.0]).unwrap());
        assert!(close(area_above_envelope(&two, 4.0), 100.0 / 3.0, 1e-9));
        let flat = build_envelope(&[RayPath::new(
            vec![(0.0, 4.0), (100.0, 4.0)],
            PathLabel::Snell,
        )])
        .unwrap();
        assert_eq!(area_above_envelope(&flat, 4.0), 0.0);
    }

    #[test]
    fn mirror_symmetry_of_end_mounted_ris() {
        let g = sym();
        let a = oracle_bp(&g, &RisPlacement::single(0.0).unwrap());
        let b = oracle_bp(&g, &RisPlacement::single(100.0).unwrap());
        assert!(close(a, 1.0 / 6.0, 1e-12) && close(b, 1.0 / 6.0, 1e-12));
    }

    #[test]
    fn clipping_rule_agrees_at_receiver() {
        let g = TunnelGeometry::new(4.0, 3.1, 1.2, 80.0).unwrap();
        let at = envelope_for(&g, &RisPlacement::single(80.0).unwrap());
        let clipped = build_envelope(&[
            build_paths(&g, &RisPlacement::none()).remove(0),
            RayPath::new(vec![(0.0, 3.1), (80.0, 4.0)], PathLabel::Ris(0)),
        ])
        .unwrap();
        for i in 0..=160 {
            let z = i as f64 * 0.5;
            assert!(close(at.eval(z), clipped.eval(z), 1e-12));
        }
    }

    #[test]
    fn case_examples() {
        assert_eq!(classify_case(&sym(), 50.0), CaseId::Case1);
        assert_eq!(classify_case(&sym(), 0.0), CaseId::Case1);
        assert_eq!(classify_case(&sym(), 100.0), CaseId::Case2);
        // y_t == y_r routes to case 3
        assert_eq!(classify_case(&sym(), 100.5), CaseId::Case3);
        let g = TunnelGeometry::new(4.0, 3.5, 2.5, 100.0).unwrap();
        assert_eq!(classify_case(&g, 120.0), CaseId::Case3);
        let g = TunnelGeometry::new(4.0, 2.0, 2.5, 100.0).unwrap();
        assert!(close(g.z_n().unwrap(), 400.0, 1e-9));
        assert_eq!(classify_case(&g, 120.0), CaseId::Case4BelowZn);
        assert_eq!(classify_case(&g, 400.0), CaseId::Case4BelowZn);
        assert_eq!(classify_case(&g, 400.1), CaseId::Case4AboveZn);
    }

    #[test]
    fn lazy_constants() {
        let cg = CaseGeometry::new(&sym(), 0.0);
        assert!(cg.k0.is_none());
        assert!(cg.k1.is_some());
        let cg = CaseGeometry::new(&sym(), 100.0);
        assert!(cg.k1.is_none());
        assert_eq!(cg.k4, Some(0.0));
        assert!(cg.z_n.is_none());
        assert!(close(cg.z_c2.unwrap(), 200.0 / 3.0, 1e-9));
        assert!(close(cg.c, 1.0 / 400.0, 1e-15));
        let g = TunnelGeometry::new(4.0, 2.0, 2.5, 100.0).unwrap();
        let cg = CaseGeometry::new(&g, 120.0);
        assert!(close(cg.z_n.unwrap(), g.z_n().unwrap(), 1e-9));
    }
}
