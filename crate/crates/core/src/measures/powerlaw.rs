use crate::error::MeasureError;

/// Maximum-likelihood exponent of a continuous power-law tail:
/// `1 + n / sum(ln(k / k_min))` over the `n` degrees `k >= k_min`.
pub fn powerlaw_exponent(degrees: &[f64], k_min: f64) -> Result<f64, MeasureError> {
    let mut n = 0usize;
    let mut sum = 0.0;
    for &k in degrees.iter().filter(|&&k| k >= k_min) {
        n += 1;
        sum += libm::log(k / k_min);
    }
    if n < 2 {
        return Err(MeasureError::ShortTail(n));
    }
    if sum <= 0.0 {
        return Err(MeasureError::DegenerateTail);
    }
    Ok(1.0 + n as f64 / sum)
}
