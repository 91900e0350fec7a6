//! Dense Hermitian eigensolver and spectrum analysis.
//!
//! The solver reduces a real symmetric matrix to tridiagonal form with
//! Householder reflections and finds all eigenvalues with the implicit-shift
//! QL iteration. Every Hamiltonian in this crate is real symmetric by
//! construction; a genuinely complex Hermitian input is handled by embedding
//! it as the real symmetric matrix [[X, -Y], [Y, X]], whose spectrum doubles
//! each eigenvalue.
//!
//! For large matrices the lowest few eigenvalues are polished by shifted
//! inverse iteration with a Rayleigh-quotient update, which removes the
//! norm-proportional rounding of the QL sweep.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{hamiltonian, Superpotential};
use crate::matrix::{lu_solve_shifted, CMatrix};

/// Matrices at least this large get inverse-iteration polishing of the
/// lowest eigenvalues.
const REFINE_DIM: usize = 1024;
/// How many of the lowest eigenvalues to polish.
const REFINE_COUNT: usize = 8;

/// Supersymmetry verdict from the level-pairing ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Preserved,
    Broken,
    Ambiguous,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Preserved => "preserved",
            Classification::Broken => "broken",
            Classification::Ambiguous => "ambiguous",
        })
    }
}

/// Classify the ratio R = (E2 - E1)/(E2 - E0): near 0 means a unique
/// zero-energy ground state (preserved), near 1 a degenerate ground pair
/// (spontaneously broken).
pub fn classify_ratio(r: f64) -> Classification {
    if !r.is_finite() {
        Classification::Ambiguous
    } else if r <= 0.2 {
        Classification::Preserved
    } else if r >= 0.8 {
        Classification::Broken
    } else {
        Classification::Ambiguous
    }
}

/// Low-lying spectrum of one truncated Hamiltonian.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub superpotential: Superpotential,
    pub lambda: usize,
    /// Lowest `k` energies, ascending.
    pub energies: Vec<f64>,
    pub gap01: f64,
    pub gap12: f64,
    /// None when E2 - E0 vanishes and the ratio is undefined.
    pub ratio_r: Option<f64>,
    pub classification: Classification,
}

/// All (or the lowest `k`) eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues(matrix: &CMatrix, k: Option<usize>) -> Result<Vec<f64>> {
    matrix.check_hermitian(1e-10)?;
    let n = matrix.dim();
    let mut evs = if matrix.max_imag() < 1e-12 {
        let mut a = matrix.real_parts();
        symmetrize(&mut a, n);
        let mut evs = sym_eigenvalues(&mut a, n)?;
        if n >= REFINE_DIM {
            let a = matrix.real_parts();
            refine_lowest(&a, n, &mut evs, REFINE_COUNT.max(k.unwrap_or(0).min(REFINE_COUNT)));
        }
        evs
    } else {
        // [[X, -Y], [Y, X]] is real symmetric with each eigenvalue doubled.
        let mut a = vec![0.0; 4 * n * n];
        for i in 0..n {
            for j in 0..n {
                let z = matrix[(i, j)];
                a[i * 2 * n + j] = z.re;
                a[i * 2 * n + (n + j)] = -z.im;
                a[(n + i) * 2 * n + j] = z.im;
                a[(n + i) * 2 * n + (n + j)] = z.re;
            }
        }
        symmetrize(&mut a, 2 * n);
        let doubled = sym_eigenvalues(&mut a, 2 * n)?;
        doubled.into_iter().step_by(2).collect()
    };
    if let Some(k) = k {
        evs.truncate(k);
    }
    Ok(evs)
}

/// The eigenvector of the smallest eigenvalue, via shifted inverse iteration.
/// Returns (eigenvalue, real eigenvector).
pub fn ground_state(matrix: &CMatrix) -> Result<(f64, Vec<f64>)> {
    matrix.check_hermitian(1e-10)?;
    if matrix.max_imag() > 1e-12 {
        return Err(Error::InvalidParameter(
            "ground_state expects a real symmetric matrix".into(),
        ));
    }
    let n = matrix.dim();
    let mut a = matrix.real_parts();
    symmetrize(&mut a, n);
    let lambda0 = sym_eigenvalues(&mut a.clone(), n)?[0];
    let a = matrix.real_parts();
    let (rho, v) = inverse_iterate(&a, n, lambda0)?;
    Ok((rho, v))
}

fn symmetrize(a: &mut [f64], n: usize) {
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = avg;
            a[j * n + i] = avg;
        }
    }
}

/// Householder reduction to tridiagonal form (eigenvalues only, no
/// transform accumulation), followed by implicit-shift QL.
/// Destroys the input.
fn sym_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(vec![]);
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(a, n, &mut d, &mut e);
    ql_implicit(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(d)
}

fn tridiagonalize(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut fsum = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    fsum += e[j] * a[i * n + j];
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i * n + i];
    }
}

fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::InvalidParameter(
                    "QL iteration failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let denom = g + if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// One inverse-iteration pass plus a Rayleigh quotient.
fn inverse_iterate(a: &[f64], n: usize, shift: f64) -> Result<(f64, Vec<f64>)> {
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + (i as f64 * 0.7512).sin() * 0.01)
        .collect();
    normalize(&mut v);
    for _ in 0..3 {
        if lu_solve_shifted(a, n, shift, &mut v).is_err() {
            // shift is exactly singular; nudge by one ulp of the norm
            let bumped = shift + shift.abs().max(1.0) * 1e-14;
            lu_solve_shifted(a, n, bumped, &mut v)?;
        }
        normalize(&mut v);
    }
    let mut av = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            acc += a[i * n + j] * v[j];
        }
        av[i] = acc;
    }
    let rho: f64 = v.iter().zip(&av).map(|(x, y)| x * y).sum();
    Ok((rho, v))
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Polish the lowest eigenvalues in place. Eigenvalues closer together than
/// the polish accuracy share a shift, which is fine: the Rayleigh quotient of
/// any vector in a near-degenerate subspace sits within the cluster.
fn refine_lowest(a: &[f64], n: usize, evs: &mut [f64], count: usize) {
    let count = count.min(evs.len());
    for idx in 0..count {
        if let Ok((rho, _)) = inverse_iterate(a, n, evs[idx]) {
            // accept only a small correction; a large jump means iteration
            // locked onto a different cluster
            if (rho - evs[idx]).abs() < 1e-3 * (1.0 + evs[idx].abs()) {
                evs[idx] = rho;
            }
        }
    }
    evs[..count].sort_by(|x, y| x.partial_cmp(y).expect("finite"));
}

/// Diagonalize the truncated Hamiltonian and summarize its low-lying
/// spectrum: lowest `k` energies, the two lowest gaps, the pairing ratio R
/// and its supersymmetry classification.
pub fn spectrum_report(sp: &Superpotential, lambda: usize, k: usize) -> Result<SpectrumReport> {
    if k < 3 {
        return Err(Error::InvalidConfig(format!("spectrum report needs k >= 3, got {k}")));
    }
    let h = hamiltonian(sp, lambda)?;
    let energies = eigenvalues(&h, Some(k))?;
    let gap01 = energies[1] - energies[0];
    let gap12 = energies[2] - energies[1];
    let spread = energies[2] - energies[0];
    let ratio_r = (spread > 0.0).then(|| gap12 / spread);
    let classification = ratio_r.map_or(Classification::Ambiguous, classify_ratio);
    Ok(SpectrumReport {
        superpotential: *sp,
        lambda,
        energies,
        gap01,
        gap12,
        ratio_r,
        classification,
    })
}

/// Which superpotential parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    M,
    G,
    Mu,
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m" => Ok(SweepParameter::M),
            "g" => Ok(SweepParameter::G),
            "mu" => Ok(SweepParameter::Mu),
            other => Err(Error::InvalidParameter(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

/// One spectrum report per grid point, sweeping a single parameter of the
/// superpotential template.
pub fn parameter_sweep(
    base: &Superpotential,
    lambda: usize,
    param: SweepParameter,
    grid: &[f64],
    k: usize,
) -> Result<Vec<SpectrumReport>> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("empty parameter grid".into()));
    }
    grid.iter()
        .map(|&value| {
            let mut sp = *base;
            match param {
                SweepParameter::M => sp.m = value,
                SweepParameter::G => sp.g = value,
                SweepParameter::Mu => sp.mu = value,
            }
            if param == SweepParameter::M && !(value > 0.0) {
                return Err(Error::InvalidParameter(format!("swept mass {value} must be > 0")));
            }
            spectrum_report(&sp, lambda, k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{block, FermionSector};
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_matrix_sorted() {
        let m = CMatrix::from_real_fn(3, |i, j| {
            if i == j {
                [3.0, 1.0, 2.0][i]
            } else {
                0.0
            }
        });
        let evs = eigenvalues(&m, None).unwrap();
        assert_abs_diff_eq!(evs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(evs[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(evs[2], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = 1.0.into();
        assert!(eigenvalues(&m, None).is_err());
    }

    #[test]
    fn complex_hermitian_via_embedding() {
        // [[0, -i], [i, 0]] has eigenvalues -1, 1.
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = num_complex::Complex64::new(0.0, -1.0);
        m[(1, 0)] = num_complex::Complex64::new(0.0, 1.0);
        let evs = eigenvalues(&m, None).unwrap();
        assert_abs_diff_eq!(evs[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(evs[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ho_spectrum_small() {
        let evs = eigenvalues(&hamiltonian(&Superpotential::ho(), 2).unwrap(), None).unwrap();
        for (e, want) in evs.iter().zip([0.0, 0.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*e, want, epsilon = 1e-12);
        }
        // HO: minimum eigenvalue exactly zero at every truncation.
        for lam in [2usize, 4, 16, 64] {
            let evs = eigenvalues(&hamiltonian(&Superpotential::ho(), lam).unwrap(), Some(1)).unwrap();
            assert_abs_diff_eq!(evs[0], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn aho_lambda2_ground() {
        let evs = eigenvalues(&hamiltonian(&Superpotential::aho(), 2).unwrap(), Some(3)).unwrap();
        assert_abs_diff_eq!(evs[0], -0.4375, epsilon = 1e-10);
    }

    #[test]
    fn dw_lambda2_levels() {
        let evs = eigenvalues(&hamiltonian(&Superpotential::dw(), 2).unwrap(), Some(3)).unwrap();
        assert_abs_diff_eq!(evs[0], 0.357233047, epsilon = 1e-6);
        assert_abs_diff_eq!(evs[1], 0.771446609, epsilon = 1e-6);
        assert_abs_diff_eq!(evs[2], 1.47855339, epsilon = 1e-6);
    }

    #[test]
    fn aho_lambda16_matches_reference() {
        let evs = eigenvalues(&hamiltonian(&Superpotential::aho(), 16).unwrap(), Some(3)).unwrap();
        assert_abs_diff_eq!(evs[0], -1.16697568e-3, epsilon = 1e-8);
        assert_abs_diff_eq!(evs[1], 1.6774942, epsilon = 1e-6);
        assert_abs_diff_eq!(evs[2], 1.68638125, epsilon = 1e-6);
    }

    #[test]
    fn dw_lambda64_matches_reference() {
        let evs = eigenvalues(&hamiltonian(&Superpotential::dw(), 64).unwrap(), Some(3)).unwrap();
        assert_abs_diff_eq!(evs[0], 0.89163238, epsilon = 1e-6);
        assert_abs_diff_eq!(evs[1], 0.89163238, epsilon = 1e-6);
        assert_abs_diff_eq!(evs[2], 2.73401076, epsilon = 1e-6);
    }

    #[test]
    fn blocks_merge_to_full_spectrum() {
        for sp in [Superpotential::ho(), Superpotential::aho(), Superpotential::dw()] {
            let lam = 8;
            let full = eigenvalues(&hamiltonian(&sp, lam).unwrap(), None).unwrap();
            let mut merged = eigenvalues(&block(&sp, lam, FermionSector::Zero).unwrap(), None).unwrap();
            merged.extend(eigenvalues(&block(&sp, lam, FermionSector::One).unwrap(), None).unwrap());
            merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in full.iter().zip(&merged) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn ho_positive_eigenvalues_pair() {
        // Pairing is exact below the truncation-defect levels, which for HO
        // sit at (lambda - 2)/2 and lambda/2 and collide with interior
        // states. Below that the positive spectrum pairs with multiplicity
        // two, exactly.
        for lam in [8usize, 16, 64] {
            let evs = eigenvalues(&hamiltonian(&Superpotential::ho(), lam).unwrap(), None).unwrap();
            let cutoff = (lam as f64 - 2.0) / 2.0 - 0.5;
            let positive: Vec<f64> =
                evs.into_iter().filter(|e| *e > 1e-9 && *e < cutoff).collect();
            assert!(!positive.is_empty());
            assert_eq!(positive.len() % 2, 0);
            let mut i = 0;
            while i + 1 < positive.len() {
                assert_abs_diff_eq!(positive[i], positive[i + 1], epsilon = 1e-9);
                i += 2;
            }
        }
    }

    #[test]
    fn report_classifications() {
        let ho = spectrum_report(&Superpotential::ho(), 16, 3).unwrap();
        assert_abs_diff_eq!(ho.gap01, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ho.gap12, 0.0, epsilon = 1e-9);
        assert_eq!(ho.classification, Classification::Preserved);

        let dw = spectrum_report(&Superpotential::dw(), 16, 3).unwrap();
        assert!(dw.ratio_r.unwrap() > 0.99);
        assert_eq!(dw.classification, Classification::Broken);

        // severe truncation artifact: AHO at lambda = 2 misclassifies
        let aho2 = spectrum_report(&Superpotential::aho(), 2, 3).unwrap();
        assert_abs_diff_eq!(aho2.ratio_r.unwrap(), 1.0, epsilon = 1e-9);
        assert_eq!(aho2.classification, Classification::Broken);

        assert!(spectrum_report(&Superpotential::ho(), 16, 2).is_err());
    }

    #[test]
    fn classify_thresholds() {
        assert_eq!(classify_ratio(0.0), Classification::Preserved);
        assert_eq!(classify_ratio(1.0), Classification::Broken);
        assert_eq!(classify_ratio(0.5427), Classification::Ambiguous);
        assert_eq!(classify_ratio(f64::NAN), Classification::Ambiguous);
    }

    #[test]
    fn dw_sweep_crosses_near_reference() {
        // m = 2, mu = 3: the pairing ratio crosses 1/2 close to g = 0.3
        // at lambda = 32.
        let base = Superpotential::with_params(crate::hamiltonian::SuperpotentialKind::Dw, 2.0, 1.0, 3.0).unwrap();
        let grid: Vec<f64> = (0..=20).map(|i| 0.02 * i as f64 + 0.1).collect();
        let reports = parameter_sweep(&base, 32, SweepParameter::G, &grid, 3).unwrap();
        let mut crossing = None;
        for w in reports.windows(2) {
            let (a, b) = (w[0].ratio_r.unwrap(), w[1].ratio_r.unwrap());
            if a < 0.5 && b >= 0.5 {
                crossing = Some(w[1].superpotential.g);
            }
        }
        let g = crossing.expect("ratio crossing found");
        assert!((0.24..=0.36).contains(&g), "crossing at g = {g}");
    }

    #[test]
    fn dw_g_zero_degenerates_to_ho() {
        let base = Superpotential::with_params(crate::hamiltonian::SuperpotentialKind::Dw, 2.0, 0.0, 3.0).unwrap();
        let report = spectrum_report(&base, 32, 4).unwrap();
        // g = 0 is a mass-2 harmonic oscillator: spectrum 0, 2, 2, 4.
        assert_abs_diff_eq!(report.energies[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(report.energies[1], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(report.energies[2], 2.0, epsilon = 1e-9);
        assert_eq!(report.classification, Classification::Preserved);
    }

    #[test]
    fn ground_state_vector_of_ho() {
        let h = hamiltonian(&Superpotential::ho(), 4).unwrap();
        let (e0, v) = ground_state(&h).unwrap();
        assert_abs_diff_eq!(e0, 0.0, epsilon = 1e-10);
        // residual check: H v = e0 v
        let hv = h.apply(&v.iter().map(|&x| num_complex::Complex64::new(x, 0.0)).collect::<Vec<_>>());
        for (i, hvi) in hv.iter().enumerate() {
            assert_abs_diff_eq!(hvi.re, e0 * v[i], epsilon = 1e-8);
        }
    }

    #[test]
    fn convergence_in_truncation() {
        // |E_i(lambda) - E_i(2 lambda)| shrinks monotonically once lambda >= 16.
        for sp in [Superpotential::aho(), Superpotential::dw()] {
            let spectra: Vec<Vec<f64>> = [16usize, 32, 64, 128]
                .iter()
                .map(|&l| eigenvalues(&hamiltonian(&sp, l).unwrap(), Some(6)).unwrap())
                .collect();
            for i in 0..6 {
                let d1 = (spectra[0][i] - spectra[1][i]).abs();
                let d2 = (spectra[1][i] - spectra[2][i]).abs();
                let d3 = (spectra[2][i] - spectra[3][i]).abs();
                // monotone until the differences bottom out at rounding
                assert!(d2 <= d1 + 1e-12 || d2 < 1e-9, "{:?} level {i}: {d1} -> {d2}", sp.kind);
                assert!(d3 <= d2 + 1e-12 || d3 < 1e-9, "{:?} level {i}: {d2} -> {d3}", sp.kind);
            }
        }
    }
}
