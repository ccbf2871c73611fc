use super::SeriesValue;

/// Derivative at index `j` of uniformly sampled values: centered second-order
/// in the interior, one-sided second-order at the two ends.
pub fn derivative_at<T: SeriesValue>(values: &[T], h: f64, j: usize) -> T {
    let n = values.len();
    assert!(n >= 3, "finite differences need at least 3 samples");
    assert!(j < n, "index {j} out of range for {n} samples");
    let inv = 1.0 / (2.0 * h);
    if j == 0 {
        (values[1] * 4.0 - values[0] * 3.0 - values[2]) * inv
    } else if j == n - 1 {
        (values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) * inv
    } else {
        (values[j + 1] - values[j - 1]) * inv
    }
}

pub fn derivative<T: SeriesValue>(values: &[T], h: f64) -> Vec<T> {
    (0..values.len())
        .map(|j| derivative_at(values, h, j))
        .collect()
}
