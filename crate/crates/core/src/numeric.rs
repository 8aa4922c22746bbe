//! Small numerical kernels: Hurwitz zeta sums, the Kolmogorov distribution,
//! adaptive quadrature and root bracketing.

use crate::scalar::Scalar;

/// Number of explicit terms summed before switching to Euler–Maclaurin.
const ZETA_TERMS: usize = 64;

/// `(Z0, Z1, Z2)` with `Zk = sum_{j >= 0} ln(a + j)^k (a + j)^(-s)`, for `s > 1`, `a >= 1`.
///
/// `Z0` is the Hurwitz zeta function; `-Z1` and `Z2` are its first and
/// second derivatives in `s`.
pub fn hurwitz_log_moments<T: Scalar>(s: T, a: T) -> (T, T, T) {
    let mut z = [T::zero(); 3];
    let mut x = a;
    for _ in 0..ZETA_TERMS {
        let l = x.ln();
        let p = x.powf(-s);
        z[0] = z[0] + p;
        z[1] = z[1] + l * p;
        z[2] = z[2] + l * l * p;
        x = x + T::one();
    }
    // Tail from x: integral + f(x)/2 - f'(x)/12 + f'''(x)/720.
    let u = s - T::one();
    let l = x.ln();
    let p = x.powf(-s);
    let pu = x.powf(-u);
    let dp = x.powf(-s - T::one());
    let half = T::of(0.5);
    let twelfth = T::of(1.0 / 12.0);
    let two = T::of(2.0);

    let i0 = pu / u;
    let i1 = pu * (l / u + T::one() / (u * u));
    let i2 = pu * (l * l / u + two * l / (u * u) + two / (u * u * u));

    let d0 = -s * dp;
    let d1 = dp * (T::one() - s * l);
    let d2 = dp * (two * l - s * l * l);

    let tp = x.powf(-s - T::of(3.0));
    let c3 = s * (s + T::one()) * (s + two);
    let c2 = s * (s + T::one());
    let three = T::of(3.0);
    let six = T::of(6.0);
    let t0 = -c3 * tp;
    let t1 = tp * (-c3 * l + three * c2 + three * s + two);
    let t2 = tp * (-c3 * l * l + six * c2 * l - six * s + six * s * l + T::of(4.0) * l - six);
    let b4 = T::of(1.0 / 720.0);

    z[0] = z[0] + i0 + half * p - twelfth * d0 + b4 * t0;
    z[1] = z[1] + i1 + half * l * p - twelfth * d1 + b4 * t1;
    z[2] = z[2] + i2 + half * l * l * p - twelfth * d2 + b4 * t2;
    (z[0], z[1], z[2])
}

pub fn hurwitz_zeta<T: Scalar>(s: T, a: T) -> T {
    hurwitz_log_moments(s, a).0
}

/// CDF of the Kolmogorov distribution, `P(K <= x)`.
pub fn kolmogorov_cdf<T: Scalar>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    let pi = T::PI();
    if x < T::one() {
        // sqrt(2 pi)/x * sum exp(-(2k-1)^2 pi^2 / (8 x^2))
        let mut sum = T::zero();
        for k in 1..=20 {
            let odd = T::of((2 * k - 1) as f64);
            sum = sum + (-(odd * odd) * pi * pi / (T::of(8.0) * x * x)).exp();
        }
        (T::of(2.0) * pi).sqrt() / x * sum
    } else {
        // 1 - 2 sum (-1)^(k-1) exp(-2 k^2 x^2)
        let mut sum = T::zero();
        for k in 1..=100 {
            let kf = T::of(k as f64);
            let term = (-T::of(2.0) * kf * kf * x * x).exp();
            sum = if k % 2 == 1 { sum + term } else { sum - term };
            if term < T::epsilon() * T::of(1e-3) {
                break;
            }
        }
        T::one() - T::of(2.0) * sum
    }
}

/// Bisection for `f(x) = 0` on `[lo, hi]`, assuming a sign change.
pub fn bisect<T: Scalar>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> T {
    let flo_negative = f(lo) < T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) * T::of(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < T::zero()) == flo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::of(0.5)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    if b <= a {
        return T::zero();
    }
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * T::of(0.5);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::of(6.0) * (fa + T::of(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<T: Scalar>(f: &impl Fn(T) -> T, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let m = (a + b) * T::of(0.5);
    let lm = (a + m) * T::of(0.5);
    let rm = (m + b) * T::of(0.5);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= T::of(15.0) * tol {
        return left + right + diff / T::of(15.0);
    }
    let half = tol * T::of(0.5);
    adaptive(f, a, m, fa, flm, fm, left, half, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, half, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_zeta_values() {
        let z2: f64 = hurwitz_zeta(2.0, 1.0);
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        let z4: f64 = hurwitz_zeta(4.0, 1.0);
        assert!((z4 - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);
        // zeta(2, 3) = zeta(2) - 1 - 1/4
        let z23: f64 = hurwitz_zeta(2.0, 3.0);
        assert!((z23 - (std::f64::consts::PI.powi(2) / 6.0 - 1.25)).abs() < 1e-12);
    }

    #[test]
    fn zeta_derivatives_match_finite_differences() {
        for &(s, a) in &[(1.5f64, 1.0f64), (2.21, 1.0), (3.0, 4.0)] {
            let (_, z1, z2) = hurwitz_log_moments(s, a);
            let h = 1e-4;
            let zp = hurwitz_zeta(s + h, a);
            let zm = hurwitz_zeta(s - h, a);
            let z0 = hurwitz_zeta(s, a);
            assert!(((zp - zm) / (2.0 * h) + z1).abs() < 1e-6 * z1.abs().max(1.0));
            assert!(((zp - 2.0 * z0 + zm) / (h * h) - z2).abs() < 1e-4 * z2.abs().max(1.0));
        }
    }

    #[test]
    fn kolmogorov_branches_agree() {
        // Both series are valid everywhere; compare the switch point.
        let x = 1.0f64;
        let small = {
            let pi = std::f64::consts::PI;
            (2.0 * pi).sqrt() / x
                * (1..=20)
                    .map(|k| (-((2 * k - 1) as f64).powi(2) * pi * pi / (8.0 * x * x)).exp())
                    .sum::<f64>()
        };
        assert!((small - kolmogorov_cdf(x)).abs() < 1e-12);
        assert!((kolmogorov_cdf(1.3580986f64) - 0.95).abs() < 1e-6);
    }

    #[test]
    fn simpson_on_polynomials() {
        let v = integrate(&|x: f64| x * x, 0.0, 1.0, 1e-12);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        let v = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-10);
        assert!((v - 2.0).abs() < 1e-9);
    }
}
