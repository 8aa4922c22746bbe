//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::distr::uniform::SampleUniform;
use rand::Rng;
use rand_distr::{Distribution, InverseGaussian, LogNormal, Poisson};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the model and statistics are computed in: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self;

    fn of_usize(x: usize) -> Self {
        Self::of(x as f64)
    }

    fn to_f64_lossy(self) -> f64;

    /// Draw from `[0, 1)`.
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random_range(Self::zero()..Self::one())
    }

    /// Inverse Gaussian draw with `mean > 0` and `shape > 0` (checked by caller).
    fn sample_inverse_gaussian<R: Rng + ?Sized>(mean: Self, shape: Self, rng: &mut R) -> Self;

    /// Log-normal draw with log-mean `mu` and log-sd `sigma >= 0` (checked by caller).
    fn sample_log_normal<R: Rng + ?Sized>(mu: Self, sigma: Self, rng: &mut R) -> Self;

    /// Poisson draw with `rate > 0` (checked by caller).
    fn sample_poisson<R: Rng + ?Sized>(rate: Self, rng: &mut R) -> Self;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn of(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn to_f64_lossy(self) -> f64 {
                self as f64
            }

            fn sample_inverse_gaussian<R: Rng + ?Sized>(mean: Self, shape: Self, rng: &mut R) -> Self {
                InverseGaussian::new(mean, shape)
                    .expect("inverse Gaussian parameters validated upstream")
                    .sample(rng)
            }

            fn sample_log_normal<R: Rng + ?Sized>(mu: Self, sigma: Self, rng: &mut R) -> Self {
                LogNormal::new(mu, sigma)
                    .expect("log-normal parameters validated upstream")
                    .sample(rng)
            }

            fn sample_poisson<R: Rng + ?Sized>(rate: Self, rng: &mut R) -> Self {
                Poisson::new(rate)
                    .expect("Poisson rate validated upstream")
                    .sample(rng)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
