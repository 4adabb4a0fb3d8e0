//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Determinant by Gaussian elimination with nonzero pivoting.
pub fn determinant<F: Field>(field: &F, mut m: Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = field.neg(&det);
        }
        let p = m[col][col].clone();
        det = field.mul(&det, &p);
        let inv = field.inv(&p).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &inv);
            for c in col..n {
                let t = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &t);
            }
        }
    }
    det
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = m.len();
    let mut a: Matrix<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(piv, col);
        let inv = field.inv(&a[col][col])?;
        for c in col..=n {
            a[col][c] = field.mul(&a[col][c], &inv);
        }
        for r in 0..n {
            if r == col || field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let t = field.mul(&factor, &a[col][c]);
                a[r][c] = field.sub(&a[r][c], &t);
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

/// Finds the first linear dependency among `vectors` (in order): returns
/// coefficients `c` with `v_k = sum_{i<k} c_i v_i` for the smallest such `k`.
pub fn first_dependency<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Option<(usize, Vec<F::Elem>)> {
    // Incremental echelon basis with back-substitution tracking.
    let dim = vectors.first().map_or(0, Vec::len);
    // Each basis row: (reduced vector, combination of original vectors, pivot column)
    let mut basis: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let mut red = v.clone();
        let mut comb = vec![field.zero(); vectors.len()];
        comb[k] = field.one();
        for (bv, bc, piv) in &basis {
            if field.is_zero(&red[*piv]) {
                continue;
            }
            let factor = field.div(&red[*piv], &bv[*piv]).expect("pivot nonzero");
            for c in 0..dim {
                red[c] = field.sub(&red[c], &field.mul(&factor, &bv[c]));
            }
            for c in 0..vectors.len() {
                comb[c] = field.sub(&comb[c], &field.mul(&factor, &bc[c]));
            }
        }
        match (0..dim).find(|&c| !field.is_zero(&red[c])) {
            Some(piv) => basis.push((red, comb, piv)),
            None => {
                // comb . vectors = 0 with comb[k] = 1
                let coeffs = (0..k).map(|i| field.neg(&comb[i])).collect();
                return Some((k, coeffs));
            }
        }
    }
    None
}
