//! Haar-random elements of SU(2).

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::geometry::SpherePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaarGenerator {
    /// Complex Gaussian matrix, Gram–Schmidt, determinant fix.
    #[default]
    GramSchmidt,
    /// Normalized standard Gaussian vector in `R⁴`.
    NormalizedGaussian,
}

impl HaarGenerator {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SpherePoint {
        match self {
            Self::GramSchmidt => rand_su2(rng),
            Self::NormalizedGaussian => rand_su2_gaussian4(rng),
        }
    }
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Draws `C = A + iB` with i.i.d. standard normal entries, orthonormalizes its
/// columns, then divides the last column by `det Q` so the result lies in
/// SU(2). Near-singular draws are rejected and redrawn.
pub fn rand_su2<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    loop {
        let c00 = complex_normal(rng);
        let c01 = complex_normal(rng);
        let c10 = complex_normal(rng);
        let c11 = complex_normal(rng);

        let n1 = (c00.norm_sqr() + c10.norm_sqr()).sqrt();
        if n1 < 1e-12 {
            continue;
        }
        let (q00, q10) = (c00 / n1, c10 / n1);
        let proj = q00.conj() * c01 + q10.conj() * c11;
        let (v0, v1) = (c01 - proj * q00, c11 - proj * q10);
        let n2 = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        let scale = (c01.norm_sqr() + c11.norm_sqr()).sqrt();
        if n2 < 1e-12 * scale.max(1e-300) {
            continue;
        }
        let (q01, q11) = (v0 / n2, v1 / n2);
        let det = q00 * q11 - q01 * q10;
        let q01 = q01 / det;
        // [[α, −β], [β̄, ᾱ]]
        if let Ok(p) = SpherePoint::new(q00, -q01) {
            return p;
        }
    }
}

pub fn rand_su2_gaussian4<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    loop {
        let a = complex_normal(rng);
        let b = complex_normal(rng);
        if a.norm_sqr() + b.norm_sqr() > 1e-24 {
            if let Ok(p) = SpherePoint::new(a, b) {
                return p;
            }
        }
    }
}
