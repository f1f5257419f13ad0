//! Linear systems over ℤ/Nℤ for a single modulus N.

use num_integer::Integer;

#[derive(Clone, Copy, Debug)]
enum RowOp {
    Swap(usize, usize),
    /// row_i -= q row_j
    Sub(usize, usize, u64),
}

/// A matrix over ℤ/Nℤ reduced to diagonal form once, answering
/// solvability queries for many right-hand sides.
#[derive(Clone, Debug)]
pub struct ModSolver {
    modulus: u64,
    rows: usize,
    cols: usize,
    rank: usize,
    diag: Vec<u64>,
    ops: Vec<RowOp>,
    v: Vec<u64>,
}

fn mulm(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn subm(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (n - b)
    }
}

impl ModSolver {
    /// `a` is row-major `rows × cols` with entries already reduced mod `n`.
    pub fn new(rows: usize, cols: usize, a: &[u64], n: u64) -> Self {
        assert!(n >= 1);
        assert_eq!(a.len(), rows * cols);
        let mut m: Vec<u64> = a.iter().map(|x| x % n).collect();
        let mut v = vec![0u64; cols * cols];
        for i in 0..cols {
            v[i * cols + i] = 1 % n;
        }
        let mut ops = vec![];
        let mut t = 0;
        let at = |m: &Vec<u64>, i: usize, j: usize| m[i * cols + j];
        while t < rows.min(cols) {
            loop {
                let mut best: Option<(usize, usize, u64)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = at(&m, i, j);
                        if x != 0 && best.is_none_or(|b| x < b.2) {
                            best = Some((i, j, x));
                        }
                    }
                }
                let Some((pi, pj, p)) = best else {
                    return Self::done(n, rows, cols, t, &m, ops, v);
                };
                if pi != t {
                    for c in 0..cols {
                        m.swap(pi * cols + c, t * cols + c);
                    }
                    ops.push(RowOp::Swap(t, pi));
                }
                if pj != t {
                    for r in 0..rows {
                        m.swap(r * cols + pj, r * cols + t);
                    }
                    for r in 0..cols {
                        v.swap(r * cols + pj, r * cols + t);
                    }
                }
                let mut clean = true;
                for i in t + 1..rows {
                    let x = at(&m, i, t);
                    if x == 0 {
                        continue;
                    }
                    let q = x / p;
                    for c in t..cols {
                        let b = m[t * cols + c];
                        if b != 0 {
                            m[i * cols + c] = subm(m[i * cols + c], mulm(q, b, n), n);
                        }
                    }
                    ops.push(RowOp::Sub(i, t, q));
                    if m[i * cols + t] != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    let x = at(&m, t, j);
                    if x == 0 {
                        continue;
                    }
                    let q = x / p;
                    for r in t..rows {
                        let b = m[r * cols + t];
                        if b != 0 {
                            m[r * cols + j] = subm(m[r * cols + j], mulm(q, b, n), n);
                        }
                    }
                    for r in 0..cols {
                        let b = v[r * cols + t];
                        if b != 0 {
                            v[r * cols + j] = subm(v[r * cols + j], mulm(q, b, n), n);
                        }
                    }
                    if m[t * cols + j] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            t += 1;
        }
        Self::done(n, rows, cols, t, &m, ops, v)
    }

    fn done(n: u64, rows: usize, cols: usize, rank: usize, m: &[u64], ops: Vec<RowOp>, v: Vec<u64>) -> Self {
        let diag = (0..rank).map(|i| m[i * cols + i]).collect();
        ModSolver { modulus: n, rows, cols, rank, diag, ops, v }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Applies the recorded row operations to a right-hand side.
    pub fn transform(&self, b: &[u64]) -> Vec<u64> {
        assert_eq!(b.len(), self.rows);
        let n = self.modulus;
        let mut b: Vec<u64> = b.iter().map(|x| x % n).collect();
        for op in &self.ops {
            match *op {
                RowOp::Swap(i, j) => b.swap(i, j),
                RowOp::Sub(i, j, q) => b[i] = subm(b[i], mulm(q, b[j], n), n),
            }
        }
        b
    }

    /// Solvability test on an already transformed right-hand side.
    pub fn solvable_transformed(&self, bt: &[u64]) -> bool {
        let n = self.modulus;
        bt.iter().enumerate().all(|(i, &x)| {
            if i < self.rank {
                let g = self.diag[i].gcd(&n);
                x % g == 0
            } else {
                x % n == 0
            }
        })
    }

    pub fn solvable(&self, b: &[u64]) -> bool {
        self.solvable_transformed(&self.transform(b))
    }

    /// Some `x` with `A x ≡ b (mod N)`.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let n = self.modulus;
        let bt = self.transform(b);
        if !self.solvable_transformed(&bt) {
            return None;
        }
        let mut y = vec![0u64; self.cols];
        for i in 0..self.rank {
            let d = self.diag[i];
            let g = d.gcd(&n);
            let ng = n / g;
            if ng == 1 {
                continue;
            }
            let inv = mod_inverse((d / g) % ng, ng).expect("coprime after dividing by gcd");
            y[i] = mulm((bt[i] / g) % ng, inv, ng);
        }
        let mut x = vec![0u64; self.cols];
        for (r, xr) in x.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (c, yc) in y.iter().enumerate() {
                acc = (acc + mulm(self.v[r * self.cols + c], *yc, n)) % n;
            }
            *xr = acc;
        }
        Some(x)
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_over_composite_modulus() {
        // 2x + 4y = b (mod 12)
        let s = ModSolver::new(1, 2, &[2, 4], 12);
        assert!(s.solvable(&[6]));
        assert!(!s.solvable(&[3]));
        let x = s.solve(&[10]).unwrap();
        assert_eq!((2 * x[0] + 4 * x[1]) % 12, 10);
    }

    #[test]
    fn zero_rows_need_zero_rhs() {
        let s = ModSolver::new(2, 1, &[3, 6], 9);
        assert!(s.solvable(&[3, 6]));
        assert!(!s.solvable(&[3, 3]));
    }
}
