//! Rational homotopy read off the homology of ℰ(A), and the spectral
//! sequence of its weight filtration.

use alloc::collections::BTreeMap;

use super::graphs::require_simply_connected;
use super::{build_e, DgComplexBundle, DgcaPresentation, FunctorError};
use crate::linalg::SpectralPages;

/// Total homology of a bundle in degrees `lo..=hi`.
pub fn homology_by_degree<K: Ord + Clone>(
    bundle: &DgComplexBundle<K>,
    lo: i32,
    hi: i32,
) -> Result<BTreeMap<i32, usize>, FunctorError> {
    Ok(bundle.complex.total_homology(lo, hi)?)
}

/// `dim π^d = dim H^{d−1}(ℰ(A))` for `d` in `lo..=hi`.
pub fn rational_homotopy(a: &DgcaPresentation, lo: i32, hi: i32) -> Result<BTreeMap<i32, usize>, FunctorError> {
    require_simply_connected(a)?;
    let e = build_e(a)?;
    let h = e.complex.total_homology(lo - 1, hi - 1).map_err(|err| match FunctorError::from(err) {
        // report in homotopy degrees
        FunctorError::CapTooSmall { requested, complete_through } => {
            FunctorError::CapTooSmall { requested: requested + 1, complete_through: complete_through + 1 }
        }
        other => other,
    })?;
    Ok(h.into_iter().map(|(d, n)| (d + 1, n)).collect())
}

/// Pages `E_0 … E_pages` of the weight filtration on ℰ(A). `E_1` is ℰ of the
/// cohomology of `a`, and the sequence converges to `H(ℰ(A))`.
pub fn homotopy_spectral_sequence(a: &DgcaPresentation, pages: usize) -> Result<SpectralPages, FunctorError> {
    require_simply_connected(a)?;
    let e = build_e(a)?;
    Ok(e.complex.spectral_pages(pages)?)
}
