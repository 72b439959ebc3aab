//! The 3-sphere as SU(2), the cyclic action defining `L(n;m)`, and distances.
//!
//! A point of `S³ ⊂ C²` is a pair `(α, β)` with `|α|² + |β|² = 1`; it maps to
//! the SU(2) matrix `[[α, −β], [β̄, ᾱ]]`. The generator `ω = e^{2πi/n}` of
//! `Z_n` acts by `(α, β) ↦ (ωα, ω^m β)`, an isometry of the round metric, and
//! the quotient distance is the minimum ambient distance over the orbit.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The lens space `L(n;m)`: `n ≥ 1`, `1 ≤ m < n` (or `m = 1` when `n = 1`,
/// which is `S³` itself), `gcd(n, m) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLensSpace", into = "RawLensSpace")]
pub struct LensSpace {
    n: u32,
    m: u32,
}

#[derive(Serialize, Deserialize)]
struct RawLensSpace {
    n: u32,
    m: u32,
}

impl TryFrom<RawLensSpace> for LensSpace {
    type Error = Error;
    fn try_from(raw: RawLensSpace) -> Result<Self> {
        LensSpace::new(raw.n, raw.m)
    }
}

impl From<LensSpace> for RawLensSpace {
    fn from(s: LensSpace) -> Self {
        RawLensSpace { n: s.n, m: s.m }
    }
}

impl LensSpace {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidSpace { n, m, reason });
        if n == 0 {
            return invalid("n must be positive");
        }
        if n == 1 {
            return if m == 1 {
                Ok(Self { n, m })
            } else {
                invalid("L(1;m) requires m = 1")
            };
        }
        if m == 0 || m >= n {
            return invalid("m must satisfy 1 <= m < n");
        }
        if gcd(n, m) != 1 {
            return invalid("gcd(n, m) must be 1");
        }
        Ok(Self { n, m })
    }

    /// The homogeneous space `L(n;1)`.
    pub fn homogeneous_family(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Isometry group acts transitively exactly when `m = 1` or `m = n − 1`.
    pub fn homogeneous(&self) -> bool {
        self.m == 1 || self.m + 1 == self.n
    }

    /// Riemannian volume, `2π²/n`.
    pub fn volume(&self) -> f64 {
        2.0 * PI * PI / f64::from(self.n)
    }

    pub fn action(&self) -> GroupAction {
        GroupAction::new(*self)
    }
}

impl std::fmt::Display for LensSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L({};{})", self.n, self.m)
    }
}

/// A unit quaternion `α + βj`, equivalently an element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    alpha: Complex64,
    beta: Complex64,
}

impl SpherePoint {
    /// Normalizes `(alpha, beta)` onto the unit sphere.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cannot normalize ({alpha}, {beta}) onto the unit sphere"
            )));
        }
        let s = norm.sqrt().recip();
        Ok(Self {
            alpha: alpha * s,
            beta: beta * s,
        })
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64, w: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y), Complex64::new(z, w))
    }

    /// Caller guarantees unit norm up to rounding.
    pub(crate) fn new_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    pub fn identity() -> Self {
        Self::new_unchecked(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `(x, y, z, w) = (Re α, Im α, Re β, Im β)`.
    pub fn cartesian(&self) -> [f64; 4] {
        [self.alpha.re, self.alpha.im, self.beta.re, self.beta.im]
    }

    /// Euclidean inner product in `R⁴`.
    pub fn dot(&self, other: &Self) -> f64 {
        (self.alpha * other.alpha.conj() + self.beta * other.beta.conj()).re
    }

    /// `[[α, −β], [β̄, ᾱ]]`
    pub fn to_su2(&self) -> [[Complex64; 2]; 2] {
        [
            [self.alpha, -self.beta],
            [self.beta.conj(), self.alpha.conj()],
        ]
    }

    /// Reads `(α, β)` off the first row of a special unitary matrix.
    pub fn from_su2(u: &[[Complex64; 2]; 2]) -> Result<Self> {
        Self::new(u[0][0], -u[0][1])
    }
}

/// Join coordinates `α = e^{iθ₁} cos η`, `β = e^{iθ₂} sin η` with
/// `θ₁, θ₂ ∈ [−π, π)` and `η ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JoinCoordinates {
    theta1: f64,
    theta2: f64,
    eta: f64,
}

impl JoinCoordinates {
    pub fn new(theta1: f64, theta2: f64, eta: f64) -> Result<Self> {
        for (what, t) in [("theta1", theta1), ("theta2", theta2)] {
            if !(-PI..PI).contains(&t) {
                return Err(Error::Domain {
                    what,
                    value: t,
                    domain: "[-pi, pi)",
                });
            }
        }
        if !(0.0..=FRAC_PI_2).contains(&eta) {
            return Err(Error::Domain {
                what: "eta",
                value: eta,
                domain: "[0, pi/2]",
            });
        }
        Ok(Self {
            theta1,
            theta2,
            eta,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

pub fn from_join(c: &JoinCoordinates) -> SpherePoint {
    let (s, co) = c.eta.sin_cos();
    SpherePoint::new_unchecked(
        Complex64::from_polar(co, c.theta1),
        Complex64::from_polar(s, c.theta2),
    )
}

/// Inverse chart. Angles of a vanishing component are set to 0.
pub fn to_join(p: &SpherePoint) -> JoinCoordinates {
    fn angle(z: Complex64) -> f64 {
        if z.norm_sqr() == 0.0 {
            return 0.0;
        }
        let a = z.arg();
        // arg lies in (−π, π]; the chart wants [−π, π)
        if a >= PI {
            -PI
        } else {
            a
        }
    }
    JoinCoordinates {
        theta1: angle(p.alpha),
        theta2: angle(p.beta),
        eta: p.beta.norm().atan2(p.alpha.norm()),
    }
}

/// Great-circle distance on the unit 3-sphere, in `[0, π]`.
///
/// Evaluated as `2·atan2(|p − q|, |p + q|)`, which equals `arccos(p·q)` but
/// stays accurate when the points nearly coincide or are nearly antipodal.
pub fn sphere_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    let diff = (p.alpha - q.alpha).norm_sqr() + (p.beta - q.beta).norm_sqr();
    let sum = (p.alpha + q.alpha).norm_sqr() + (p.beta + q.beta).norm_sqr();
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Same as [`sphere_distance`], as `arccos` of the clamped dot product.
pub fn sphere_distance_arccos(p: &SpherePoint, q: &SpherePoint) -> f64 {
    p.dot(q).clamp(-1.0, 1.0).acos()
}

fn mul2(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn adjoint(a: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Eigenvalues `(λ₁, λ₂)` of a special unitary 2×2 matrix, `λ₁` in the closed
/// upper half plane and `λ₂ = λ̄₁`.
pub fn su2_eigenvalues(u: &[[Complex64; 2]; 2]) -> (Complex64, Complex64) {
    // U = [[a, −b], [b̄, ā]]: trace 2 Re a, determinant 1, so
    // λ = Re a ± i·sqrt(1 − (Re a)²) with 1 − (Re a)² = (Im a)² + |b|².
    let a = 0.5 * (u[0][0] + u[1][1].conj());
    let b = 0.5 * (u[1][0].conj() - u[0][1]);
    let im = (a.im * a.im + b.norm_sqr()).sqrt();
    let l1 = Complex64::new(a.re, im);
    (l1, l1.conj())
}

/// `|log λ₁|` for the eigenvalues of `AB*`, principal logarithm.
pub fn eigenvalue_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    let u = mul2(&p.to_su2(), &adjoint(&q.to_su2()));
    let (l1, _) = su2_eigenvalues(&u);
    l1.ln().norm()
}

/// `(ω^k α, ω^{km} β)` with `ω = e^{2πi/n}`; `k` is reduced mod `n`.
pub fn group_action(space: &LensSpace, k: i64, p: &SpherePoint) -> SpherePoint {
    let n = i64::from(space.n);
    let ka = k.rem_euclid(n);
    let kb = (ka * i64::from(space.m)).rem_euclid(n);
    SpherePoint::new_unchecked(
        p.alpha * root_of_unity(ka as u64, space.n),
        p.beta * root_of_unity(kb as u64, space.n),
    )
}

fn root_of_unity(j: u64, n: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (j as f64) / f64::from(n))
}

/// Quotient distance `min_k d(ω^k·p, q)`.
pub fn lens_distance(space: &LensSpace, p: &SpherePoint, q: &SpherePoint) -> f64 {
    space.action().orbit_distance(p, q)
}

/// Quotient distance by the literal double minimum `min_{j,k} d(ω^j·p, ω^k·q)`.
pub fn lens_distance_double_loop(space: &LensSpace, p: &SpherePoint, q: &SpherePoint) -> f64 {
    space.action().orbit_distance_double_loop(p, q)
}

/// The `Z_n` action with its roots of unity tabulated, for repeated use.
#[derive(Debug, Clone)]
pub struct GroupAction {
    space: LensSpace,
    alpha_roots: Vec<Complex64>,
    beta_roots: Vec<Complex64>,
}

impl GroupAction {
    pub fn new(space: LensSpace) -> Self {
        let n = space.n;
        let alpha_roots = (0..n).map(|k| root_of_unity(u64::from(k), n)).collect();
        let beta_roots = (0..n)
            .map(|k| root_of_unity((u64::from(k) * u64::from(space.m)) % u64::from(n), n))
            .collect();
        Self {
            space,
            alpha_roots,
            beta_roots,
        }
    }

    pub fn space(&self) -> &LensSpace {
        &self.space
    }

    pub fn apply(&self, k: usize, p: &SpherePoint) -> SpherePoint {
        let k = k % self.alpha_roots.len();
        SpherePoint::new_unchecked(p.alpha * self.alpha_roots[k], p.beta * self.beta_roots[k])
    }

    /// Orbit element of `p` closest to `q`, found by maximizing `ω^k·p · q`.
    fn nearest_shift(&self, p: &SpherePoint, q: &SpherePoint) -> usize {
        let a = p.alpha * q.alpha.conj();
        let b = p.beta * q.beta.conj();
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (k, (ra, rb)) in self.alpha_roots.iter().zip(&self.beta_roots).enumerate() {
            let dot = (ra * a).re + (rb * b).re;
            if dot > best_dot {
                best_dot = dot;
                best = k;
            }
        }
        best
    }

    pub fn orbit_distance(&self, p: &SpherePoint, q: &SpherePoint) -> f64 {
        let k = self.nearest_shift(p, q);
        sphere_distance(&self.apply(k, p), q)
    }

    pub fn orbit_distance_double_loop(&self, p: &SpherePoint, q: &SpherePoint) -> f64 {
        let n = self.alpha_roots.len();
        let mut best = f64::INFINITY;
        for j in 1..=n {
            let pj = self.apply(j, p);
            for k in 1..=n {
                best = best.min(sphere_distance(&pj, &self.apply(k, q)));
            }
        }
        best
    }

    /// `min_k d(ω^k·p, I)`; only the α component matters against the identity.
    pub fn distance_to_identity(&self, p: &SpherePoint) -> f64 {
        self.orbit_distance(p, &SpherePoint::identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lens_space_validation() {
        assert!(LensSpace::new(5, 2).is_ok());
        assert!(LensSpace::new(1, 1).is_ok());
        assert!(LensSpace::new(0, 1).is_err());
        assert!(LensSpace::new(1, 2).is_err());
        assert!(LensSpace::new(6, 2).is_err());
        assert!(LensSpace::new(5, 5).is_err());
        assert!(LensSpace::new(5, 0).is_err());
    }

    #[test]
    fn homogeneity_flags() {
        assert!(LensSpace::new(5, 1).unwrap().homogeneous());
        assert!(LensSpace::new(5, 4).unwrap().homogeneous());
        assert!(!LensSpace::new(5, 2).unwrap().homogeneous());
        assert!(!LensSpace::new(7, 3).unwrap().homogeneous());
        assert!(LensSpace::new(2, 1).unwrap().homogeneous());
        assert!(LensSpace::new(1, 1).unwrap().homogeneous());
    }

    #[test]
    fn volume_is_two_pi_squared_over_n() {
        let s = LensSpace::new(7, 3).unwrap();
        assert!(close(s.volume(), 2.0 * PI * PI / 7.0, 1e-15));
    }

    #[test]
    fn deserialization_validates() {
        assert!(LensSpace::try_from(RawLensSpace { n: 6, m: 3 }).is_err());
        assert!(LensSpace::try_from(RawLensSpace { n: 7, m: 3 }).is_ok());
    }

    #[test]
    fn construction_normalizes() {
        let p = SpherePoint::from_cartesian(3.0, 0.0, 4.0, 0.0).unwrap();
        let [x, _, z, _] = p.cartesian();
        assert!(close(x, 0.6, 1e-15) && close(z, 0.8, 1e-15));
        assert!(SpherePoint::from_cartesian(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn join_examples() {
        let p = from_join(&JoinCoordinates::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(p.cartesian(), [1.0, 0.0, 0.0, 0.0]);

        let p = from_join(&JoinCoordinates::new(0.0, 0.0, FRAC_PI_2).unwrap());
        let c = p.cartesian();
        assert!(close(c[0], 0.0, 1e-16) && close(c[2], 1.0, 1e-16));

        let c = JoinCoordinates::new(PI / 3.0, -PI / 4.0, PI / 6.0).unwrap();
        let back = to_join(&from_join(&c));
        assert!(close(back.theta1(), c.theta1(), 1e-12));
        assert!(close(back.theta2(), c.theta2(), 1e-12));
        assert!(close(back.eta(), c.eta(), 1e-12));
    }

    #[test]
    fn to_join_degenerate_points() {
        let j = to_join(&SpherePoint::identity());
        assert_eq!((j.theta1(), j.theta2(), j.eta()), (0.0, 0.0, 0.0));

        let j = to_join(&SpherePoint::from_cartesian(0.0, 0.0, 0.0, 1.0).unwrap());
        assert_eq!(j.theta1(), 0.0);
        assert!(close(j.theta2(), FRAC_PI_2, 1e-15));
        assert!(close(j.eta(), FRAC_PI_2, 1e-15));
    }

    #[test]
    fn to_join_maps_negative_real_axis_into_half_open_range() {
        let j = to_join(&SpherePoint::from_cartesian(-1.0, 0.0, 0.0, 0.0).unwrap());
        assert_eq!(j.theta1(), -PI);
        assert!(JoinCoordinates::new(PI, 0.0, 0.0).is_err());
    }

    #[test]
    fn distance_examples() {
        let e = SpherePoint::identity();
        let minus = SpherePoint::from_cartesian(-1.0, 0.0, 0.0, 0.0).unwrap();
        let z = SpherePoint::from_cartesian(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(sphere_distance(&e, &e), 0.0);
        assert!(close(sphere_distance(&e, &minus), PI, 1e-15));
        assert!(close(sphere_distance(&e, &z), FRAC_PI_2, 1e-15));
        assert!(close(sphere_distance_arccos(&e, &z), FRAC_PI_2, 1e-15));
    }

    #[test]
    fn eigenvalue_distance_examples() {
        let e = SpherePoint::identity();
        assert!(eigenvalue_distance(&e, &e).abs() < 1e-15);
        for i in 0..=16 {
            let phi = PI * f64::from(i) / 16.0;
            // θ₁ = φ, η = 0; θ₁ = π is represented as the equivalent −π
            let t = if phi >= PI { -PI } else { phi };
            let a = from_join(&JoinCoordinates::new(t, 0.0, 0.0).unwrap());
            assert!(close(eigenvalue_distance(&a, &e), phi, 1e-14), "phi={phi}");
        }
    }

    #[test]
    fn group_action_examples() {
        let s = LensSpace::new(5, 2).unwrap();
        let p = SpherePoint::from_cartesian(0.3, -0.1, 0.5, 0.7).unwrap();
        for k in [0, 5, -5, 10] {
            let q = group_action(&s, k, &p);
            for (a, b) in q.cartesian().iter().zip(p.cartesian()) {
                assert!(close(*a, b, 1e-15));
            }
        }
        let q = group_action(&s, 1, &SpherePoint::identity()).cartesian();
        let t = 2.0 * PI / 5.0;
        assert!(close(q[0], t.cos(), 1e-15) && close(q[1], t.sin(), 1e-15));
        assert_eq!((q[2], q[3]), (0.0, 0.0));
    }

    #[test]
    fn action_table_matches_free_function() {
        let s = LensSpace::new(7, 3).unwrap();
        let act = s.action();
        let p = SpherePoint::from_cartesian(0.3, -0.1, 0.5, 0.7).unwrap();
        for k in 0..14 {
            let a = act.apply(k, &p).cartesian();
            let b = group_action(&s, k as i64, &p).cartesian();
            for (x, y) in a.iter().zip(b) {
                assert!(close(*x, y, 1e-15));
            }
        }
    }

    #[test]
    fn same_orbit_is_distance_zero() {
        let s = LensSpace::new(5, 2).unwrap();
        let p = SpherePoint::from_cartesian(0.3, -0.1, 0.5, 0.7).unwrap();
        let q = group_action(&s, 3, &p);
        assert!(lens_distance(&s, &p, &q) < 1e-7);
        assert!(lens_distance(&s, &p, &q) < 1e-14);
    }

    #[test]
    fn injectivity_radius_boundary() {
        for n in 2..=12u32 {
            let s = LensSpace::new(n, 1).unwrap();
            let t = PI / f64::from(n);
            let p = from_join(&JoinCoordinates::new(t, 0.0, 0.0).unwrap());
            let d = lens_distance(&s, &p, &SpherePoint::identity());
            assert!(close(d, t, 1e-14), "n={n}: {d}");
        }
    }

    #[test]
    fn sphere_is_a_trivial_quotient() {
        let s = LensSpace::new(1, 1).unwrap();
        let p = SpherePoint::from_cartesian(0.3, -0.1, 0.5, 0.7).unwrap();
        let q = SpherePoint::from_cartesian(-0.2, 0.4, 0.1, 0.9).unwrap();
        assert_eq!(lens_distance(&s, &p, &q), sphere_distance(&p, &q));
    }
}
