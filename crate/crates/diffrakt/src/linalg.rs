//! Small dense linear algebra: complex LU (determinants, solves), Ryser's
//! permanent, and eigenvalue computations backed by the system LAPACK
//! (OpenBLAS) for the sizes where a hand-rolled solver would be too slow —
//! symmetric eigendecompositions for the Nystrom DPP sampler and complex
//! Hessenberg QR for Ginibre matrices and companion-matrix polynomial roots.

use num_complex::{Complex32, Complex64};

use crate::error::{Error, Result};

// LAPACK (Fortran) entry points from the system OpenBLAS.  The trailing
// usize arguments are the hidden lengths of the character arguments.
#[link(name = "openblas")]
extern "C" {
    fn dsyevd_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
        jobz_len: usize,
        uplo_len: usize,
    );
    fn zhseqr_(
        job: *const u8,
        compz: *const u8,
        n: *const i32,
        ilo: *const i32,
        ihi: *const i32,
        h: *mut Complex64,
        ldh: *const i32,
        w: *mut Complex64,
        z: *mut Complex64,
        ldz: *const i32,
        work: *mut Complex64,
        lwork: *const i32,
        info: *mut i32,
        job_len: usize,
        compz_len: usize,
    );
    fn chseqr_(
        job: *const u8,
        compz: *const u8,
        n: *const i32,
        ilo: *const i32,
        ihi: *const i32,
        h: *mut Complex32,
        ldh: *const i32,
        w: *mut Complex32,
        z: *mut Complex32,
        ldz: *const i32,
        work: *mut Complex32,
        lwork: *const i32,
        info: *mut i32,
        job_len: usize,
        compz_len: usize,
    );
    fn zgebal_(
        job: *const u8,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        ilo: *mut i32,
        ihi: *mut i32,
        scale: *mut f64,
        info: *mut i32,
        job_len: usize,
    );
}

/// LU decomposition with partial pivoting, in place.  Returns the pivot
/// permutation sign, or None if the matrix is numerically singular.
fn lu_decompose(a: &mut [Complex64], n: usize) -> Option<(Vec<usize>, f64)> {
    let mut piv: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut max = a[k * n + k].norm_sqr();
        for i in (k + 1)..n {
            let v = a[i * n + k].norm_sqr();
            if v > max {
                max = v;
                p = i;
            }
        }
        if max == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            piv.swap(k, p);
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            a[i * n + k] = factor;
            for j in (k + 1)..n {
                let upd = factor * a[k * n + j];
                a[i * n + j] -= upd;
            }
        }
    }
    Some((piv, sign))
}

/// Determinant of a row-major n x n complex matrix via LU with partial
/// pivoting.  Exact zeros (duplicate rows) come out as exactly zero.
pub fn complex_det(matrix: &[Complex64], n: usize) -> Complex64 {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    match lu_decompose(&mut a, n) {
        None => Complex64::new(0.0, 0.0),
        Some((_, sign)) => {
            let mut det = Complex64::new(sign, 0.0);
            for k in 0..n {
                det *= a[k * n + k];
            }
            det
        }
    }
}

/// Solves A X = B for X, with A (n x n) and B (n x m), both row-major.
pub fn complex_solve(a_in: &[Complex64], b_in: &[Complex64], n: usize, m: usize) -> Result<Vec<Complex64>> {
    assert_eq!(a_in.len(), n * n);
    assert_eq!(b_in.len(), n * m);
    let mut a = a_in.to_vec();
    let (piv, _) = lu_decompose(&mut a, n)
        .ok_or_else(|| Error::Conditioning("singular matrix in complex_solve".into()))?;
    let mut x = vec![Complex64::new(0.0, 0.0); n * m];
    for (dst, &src) in piv.iter().enumerate() {
        for j in 0..m {
            x[dst * m + j] = b_in[src * m + j];
        }
    }
    // forward substitution (unit lower)
    for i in 0..n {
        for k in 0..i {
            let l = a[i * n + k];
            for j in 0..m {
                let upd = l * x[k * m + j];
                x[i * m + j] -= upd;
            }
        }
    }
    // back substitution
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            let u = a[i * n + k];
            for j in 0..m {
                let upd = u * x[k * m + j];
                x[i * m + j] -= upd;
            }
        }
        let d = a[i * n + i];
        for j in 0..m {
            x[i * m + j] /= d;
        }
    }
    Ok(x)
}

/// Permanent of a row-major k x k complex matrix by Ryser's
/// inclusion-exclusion formula (2^k subsets); intended for k <= 8.
pub fn complex_permanent(matrix: &[Complex64], k: usize) -> Complex64 {
    assert_eq!(matrix.len(), k * k);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    assert!(k <= 20, "Ryser blows up past k = 20");
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 1u32..(1 << k) {
        let bits = mask.count_ones() as usize;
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..k {
            let mut rowsum = Complex64::new(0.0, 0.0);
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    rowsum += matrix[i * k + j];
                }
            }
            prod *= rowsum;
        }
        let sign = if (k - bits) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * prod;
    }
    total
}

/// Eigenvalues and orthonormal eigenvectors of a real symmetric matrix
/// (row-major == column-major by symmetry).  Ascending eigenvalue order;
/// eigenvector k occupies `vectors[k*n..(k+1)*n]`.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    assert_eq!(matrix.len(), n * n);
    let ni = i32::try_from(n).map_err(|_| Error::Linalg("matrix too large".into()))?;
    let mut a = matrix.to_vec();
    let mut w = vec![0.0f64; n];
    let lwork = (1 + 6 * n + 2 * n * n) as i32 + 64;
    let liwork = (3 + 5 * n) as i32 + 64;
    let mut work = vec![0.0f64; lwork as usize];
    let mut iwork = vec![0i32; liwork as usize];
    let mut info = 0i32;
    unsafe {
        dsyevd_(
            b"V".as_ptr(),
            b"L".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(Error::Linalg(format!("dsyevd failed with info = {info}")));
    }
    // LAPACK returns eigenvectors as columns in column-major storage,
    // which reads as rows of `a` in row-major indexing.
    Ok((w, a))
}

/// Eigenvalues of an upper Hessenberg complex matrix (column-major input,
/// destroyed).  f64 precision.
pub fn hessenberg_eigenvalues_f64(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    assert_eq!(h.len(), n * n);
    let ni = i32::try_from(n).map_err(|_| Error::Linalg("matrix too large".into()))?;
    let one = 1i32;
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut z = [Complex64::new(0.0, 0.0); 1];
    let lwork = (8 * n) as i32 + 64;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork as usize];
    let mut info = 0i32;
    unsafe {
        zhseqr_(
            b"E".as_ptr(),
            b"N".as_ptr(),
            &ni,
            &one,
            &ni,
            h.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            z.as_mut_ptr(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(Error::Linalg(format!("zhseqr failed with info = {info}")));
    }
    Ok(w)
}

/// Eigenvalues of an upper Hessenberg complex matrix in single precision
/// (column-major input, destroyed).  Used for large Ginibre matrices where
/// the ~1e-4 absolute eigenvalue error is far below the statistical
/// resolution of the estimators consuming the points.
pub fn hessenberg_eigenvalues_f32(h: &mut [Complex32], n: usize) -> Result<Vec<Complex32>> {
    assert_eq!(h.len(), n * n);
    let ni = i32::try_from(n).map_err(|_| Error::Linalg("matrix too large".into()))?;
    let one = 1i32;
    let mut w = vec![Complex32::new(0.0, 0.0); n];
    let mut z = [Complex32::new(0.0, 0.0); 1];
    let lwork = (8 * n) as i32 + 64;
    let mut work = vec![Complex32::new(0.0, 0.0); lwork as usize];
    let mut info = 0i32;
    unsafe {
        chseqr_(
            b"E".as_ptr(),
            b"N".as_ptr(),
            &ni,
            &one,
            &ni,
            h.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            z.as_mut_ptr(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(Error::Linalg(format!("chseqr failed with info = {info}")));
    }
    Ok(w)
}

/// Roots of the polynomial c_0 + c_1 z + ... + c_n z^n via the balanced
/// companion matrix.  Leading zeros (or underflowed leading coefficients)
/// are trimmed; trailing zero coefficients yield exact zero roots.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    // trim leading (highest-degree) negligible coefficients
    let mut hi = coeffs.len();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::domain("all polynomial coefficients are zero"));
    }
    while hi > 1 && coeffs[hi - 1].norm() < scale * 1e-250 {
        hi -= 1;
    }
    let c = &coeffs[..hi];
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    // trailing zeros give roots at the origin
    let mut lo = 0;
    while lo < n && c[lo].norm() == 0.0 {
        lo += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];
    let m = n - lo;
    if m == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    // companion matrix of the monic polynomial, column-major, n x n:
    // subdiagonal ones, last column -c_k/c_n
    let mut a = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 1..m {
        a[(i - 1) * m + i] = Complex64::new(1.0, 0.0); // column i-1, row i
    }
    for i in 0..m {
        a[(m - 1) * m + i] = -c[lo + i] / lead; // last column, row i
    }
    balance_in_place(&mut a, m)?;
    let eig = hessenberg_eigenvalues_f64(&mut a, m)?;
    roots.extend(eig);
    Ok(roots)
}

/// Diagonal balancing (zgebal job=S) of a column-major matrix; similarity
/// transform, eigenvalues unchanged, Hessenberg structure preserved.
fn balance_in_place(a: &mut [Complex64], n: usize) -> Result<()> {
    let ni = i32::try_from(n).map_err(|_| Error::Linalg("matrix too large".into()))?;
    let mut ilo = 0i32;
    let mut ihi = 0i32;
    let mut scale = vec![0.0f64; n];
    let mut info = 0i32;
    unsafe {
        zgebal_(
            b"S".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            &mut ilo,
            &mut ihi,
            scale.as_mut_ptr(),
            &mut info,
            1,
        );
    }
    if info != 0 {
        return Err(Error::Linalg(format!("zgebal failed with info = {info}")));
    }
    Ok(())
}
