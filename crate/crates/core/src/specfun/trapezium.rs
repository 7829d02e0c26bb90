use crate::error::{domain, Error, Result};

/// Cumulative trapezium sums of a sampled density, offset by the atom at the
/// first grid point.
pub fn trapezium_cdf(samples: &[(f64, f64)], atom0: f64) -> Result<Vec<(f64, f64)>> {
    if !(0.0..=1.0).contains(&atom0) {
        return Err(domain(format!("atom0 must lie in [0, 1], got {atom0}")));
    }
    for (i, &(t, f)) in samples.iter().enumerate() {
        if !t.is_finite() || !f.is_finite() {
            return Err(Error::NonFinite { name: "sample", value: if t.is_finite() { f } else { t } });
        }
        if f < 0.0 {
            return Err(domain(format!("density must be nonnegative, got {f} at t = {t}")));
        }
        if i > 0 && !(t > samples[i - 1].0) {
            return Err(Error::Grid(format!("t values must be strictly increasing at index {i}")));
        }
    }
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = atom0;
    for (i, &(t, f)) in samples.iter().enumerate() {
        if i > 0 {
            let (tp, fp) = samples[i - 1];
            acc += 0.5 * (t - tp) * (f + fp);
        }
        out.push((t, acc));
    }
    Ok(out)
}
