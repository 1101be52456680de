use super::Grid1D;
use crate::error::{Error, Result};

/// Interior local maxima above `min + (max - min) / 2`, refined by a parabola
/// through the three samples around each. Returns positions.
fn refined_maxima(profile: &[f64], grid: &Grid1D) -> Vec<f64> {
    let (lo, hi) = profile.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
        return Vec::new();
    }
    let threshold = lo + 0.5 * (hi - lo);
    let dx = grid.dx();
    let mut peaks = Vec::new();
    for i in 1..profile.len().saturating_sub(1) {
        let (l, c, r) = (profile[i - 1], profile[i], profile[i + 1]);
        if c > threshold && c > l && c >= r {
            let curvature = l - 2.0 * c + r;
            let offset = if curvature < 0.0 { 0.5 * (l - r) / curvature } else { 0.0 };
            peaks.push(grid.x(i) + offset * dx);
        }
    }
    peaks
}

/// Median distance between consecutive maxima of an intensity profile.
pub fn extract_fringe_spacing(profile: &[f64], grid: &Grid1D) -> Result<f64> {
    if profile.len() != grid.n() {
        return Err(Error::Analysis(format!("profile has {} samples, grid has {}", profile.len(), grid.n())));
    }
    let peaks = refined_maxima(profile, grid);
    if peaks.len() < 3 {
        return Err(Error::Analysis(format!("found {} fringe maxima above half maximum, need at least 3", peaks.len())));
    }
    let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_by(f64::total_cmp);
    let mid = gaps.len() / 2;
    Ok(if gaps.len() % 2 == 1 { gaps[mid] } else { 0.5 * (gaps[mid - 1] + gaps[mid]) })
}

/// Michelson contrast of the central fringe: `(I_max - I_min) / (I_max + I_min)`
/// between the global maximum and the nearest local minimum beside it. A
/// minimum only counts if the profile rises beyond it to a neighbouring
/// fringe of at least `NEIGHBOUR_FRACTION` of the peak; otherwise the
/// contrast is zero.
pub fn fringe_visibility(profile: &[f64]) -> f64 {
    const NEIGHBOUR_FRACTION: f64 = 0.1;
    let Some((peak, &i_max)) = profile.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)) else {
        return 0.0;
    };
    let side = |step: isize| -> Option<f64> {
        let at = |i: isize| profile.get(usize::try_from(i).ok()?).copied();
        let mut i = peak as isize;
        while let (Some(c), Some(n)) = (at(i), at(i + step)) {
            if n > c {
                break;
            }
            i += step;
        }
        let minimum = at(i)?;
        let mut j = i;
        while let (Some(c), Some(n)) = (at(j), at(j + step)) {
            if n < c {
                break;
            }
            j += step;
        }
        let neighbour = at(j)?;
        (j != i && neighbour >= NEIGHBOUR_FRACTION * i_max).then_some(minimum)
    };
    let Some(i_min) = [side(1), side(-1)].into_iter().flatten().reduce(f64::max) else {
        return 0.0;
    };
    if i_max + i_min <= 0.0 {
        return 0.0;
    }
    (i_max - i_min) / (i_max + i_min)
}
