//! Small numerical helpers: Bessel J0, log-domain sums and a running
//! mean/variance accumulator for Monte Carlo statistics.

/// Zero-order Bessel function of the first kind.
///
/// Power series below the crossover, Hankel asymptotic expansion above it.
/// Absolute error stays below 1e-10 over the full real line (the asymptotic
/// truncation error at the crossover is ~1e-11 and shrinks with |x|).
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x.is_nan() {
        return f64::NAN;
    }
    if x < J0_SERIES_CUTOVER {
        j0_power_series(x)
    } else {
        j0_asymptotic(x)
    }
}

const J0_SERIES_CUTOVER: f64 = 12.0;

fn j0_power_series(x: f64) -> f64 {
    // J0(x) = sum_k (-1)^k (x^2/4)^k / (k!)^2
    let u = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..80 {
        term *= -u / ((k * k) as f64);
        let prev = sum;
        sum += term;
        if sum == prev {
            break;
        }
    }
    sum
}

fn j0_asymptotic(x: f64) -> f64 {
    // J0(x) = sqrt(2/(pi x)) [P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)]
    // with P, Q the order-zero Hankel series. Coefficients follow
    // a_{m+1} = -a_m (2m+1)^2 / (8(m+1)); terms are summed while they
    // keep shrinking, which is the optimal truncation for an asymptotic
    // series.
    let mut a = [0.0f64; 26];
    a[0] = 1.0;
    for m in 0..25 {
        let q = (2 * m + 1) as f64;
        a[m + 1] = -a[m] * q * q / (8.0 * (m + 1) as f64);
    }

    let inv_x = 1.0 / x;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..12 {
        let tp = neg1_pow(k) * a[2 * k] * inv_x.powi(2 * k as i32);
        if tp.abs() >= last {
            break;
        }
        p += tp;
        last = tp.abs();
    }
    last = f64::INFINITY;
    for k in 0..12 {
        let tq = neg1_pow(k) * a[2 * k + 1] * inv_x.powi(2 * k as i32 + 1);
        if tq.abs() >= last {
            break;
        }
        q += tq;
        last = tq.abs();
    }

    let omega = x - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}

fn neg1_pow(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// log(sum(exp(v))) over natural-log inputs, stable for widely spread values.
pub fn ln_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = values.iter().map(|&v| (v - max).exp()).sum();
    max + sum.ln()
}

// ---------------------------------------------------------------------------
// Running statistics
// ---------------------------------------------------------------------------

/// Welford accumulator for a scalar Monte Carlo statistic.
///
/// Trials are pushed in a fixed order by the callers, so results are
/// reproducible regardless of how the surrounding work is parallelised.
#[derive(Debug, Clone, Default)]
pub struct MeanVar {
    n: u64,
    mean: f64,
    m2: f64,
}

impl MeanVar {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            f64::NAN
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.n < 2 {
            f64::NAN
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}
