use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use super::{ArithError, Assignment, Field, Point, Rational, RationalExpr};

/// Dense rectangular matrix over a [`Field`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExprMatrix = Matrix<RationalExpr>;
pub type RationalMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::Dimension(format!(
                "ragged rows: expected {c} entries in every row"
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn try_from_fn<E>(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<T, E>,
    ) -> Result<Self, E> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Matrix::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let (z, o) = (proto.zero_like(), proto.one_like());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::vanishes)
    }

    /// First entry that is not symbolically zero.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &T)> {
        self.iter().find(|(_, _, v)| !v.vanishes())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ArithError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ArithError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> Self {
        self.map(Field::neg)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|v| v.scale(k))
    }

    pub fn try_scale_by(&self, k: &T) -> Result<Self, ArithError> {
        self.try_map(|v| v.try_mul(k))
    }

    /// Matrix product; zero entries are skipped.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let proto = self.data.first().or(other.data.first());
        let Some(proto) = proto else {
            return Ok(Matrix {
                rows: self.rows,
                cols: other.cols,
                data: Vec::new(),
            });
        };
        Matrix::try_from_fn(self.rows, other.cols, |i, j| {
            dot((0..self.cols).map(|k| (self.get(i, k), other.get(k, j))), proto)
        })
    }

    /// `self · v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| dot((0..self.cols).map(|k| (self.get(i, k), &v[k])), &v[0]))
            .collect()
    }

    pub fn trace(&self) -> Result<T, ArithError> {
        self.require_square()?;
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.try_add(self.get(i, i))?;
        }
        Ok(acc)
    }

    pub fn is_symmetric(&self) -> Result<bool, ArithError> {
        self.require_square()?;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if !self.get(i, j).try_sub(self.get(j, i))?.vanishes() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn require_square(&self) -> Result<(), ArithError> {
        if !self.is_square() || self.rows == 0 {
            return Err(ArithError::Dimension(format!(
                "expected a non-empty square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Determinant by cofactor expansion along rows, memoized over column subsets.
    pub fn det(&self) -> Result<T, ArithError> {
        self.require_square()?;
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<T, ArithError> {
        let mut memo: HashMap<u32, T> = HashMap::new();
        let full: u32 = (1 << cols.len()) - 1;
        expand(self, rows, cols, 0, full, &mut memo)
    }

    /// Transposed cofactor matrix.
    pub fn adjugate(&self) -> Result<Self, ArithError> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::identity(1, &self.data[0]));
        }
        Matrix::try_from_fn(n, n, |i, j| {
            // adj(i, j) = (-1)^(i+j) det(minor without row j, column i)
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols)?;
            Ok(if (i + j) % 2 == 0 { m } else { m.neg() })
        })
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        let det = self.det()?;
        if det.vanishes() {
            return Err(ArithError::Singular);
        }
        let adj = self.adjugate()?;
        adj.try_map(|v| v.try_div(&det))
    }
}

fn expand<T: Field>(
    m: &Matrix<T>,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    mask: u32,
    memo: &mut HashMap<u32, T>,
) -> Result<T, ArithError> {
    if let Some(v) = memo.get(&mask) {
        return Ok(v.clone());
    }
    let row = rows[depth];
    let proto = m.get(0, 0);
    if depth == rows.len() - 1 {
        let c = mask.trailing_zeros() as usize;
        return Ok(m.get(row, cols[c]).clone());
    }
    let mut acc = proto.zero_like();
    let mut sign_pos = true;
    for (ci, &c) in cols.iter().enumerate() {
        if mask & (1 << ci) == 0 {
            continue;
        }
        let entry = m.get(row, c);
        if !entry.vanishes() {
            let sub = expand(m, rows, cols, depth + 1, mask & !(1 << ci), memo)?;
            if !sub.vanishes() {
                let t = entry.try_mul(&sub)?;
                acc = if sign_pos { acc.try_add(&t)? } else { acc.try_sub(&t)? };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

/// Σ aᵢ·bᵢ skipping zero factors.
pub fn dot<'a, T: Field + 'a>(
    pairs: impl Iterator<Item = (&'a T, &'a T)>,
    proto: &T,
) -> Result<T, ArithError> {
    let mut acc = proto.zero_like();
    for (a, b) in pairs {
        if a.vanishes() || b.vanishes() {
            continue;
        }
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

impl ExprMatrix {
    pub fn eval(&self, assignment: &Assignment) -> Result<RationalMatrix, ArithError> {
        match self.data.first() {
            None => Ok(Matrix {
                rows: self.rows,
                cols: self.cols,
                data: Vec::new(),
            }),
            Some(e) => self.eval_at(&assignment.resolve(e.space())?),
        }
    }

    pub fn eval_at(&self, point: &Point) -> Result<RationalMatrix, ArithError> {
        self.try_map(|e| e.eval_at(point))
    }
}

impl RationalMatrix {
    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !Field::vanishes(m.get(i, c))) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !Field::vanishes(m.get(i, c)) {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![zero.clone(); self.cols];
                v[free] = one.clone();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// Inertia `(positive, negative)` of a symmetric matrix by congruence
    /// (Sylvester). Errors if the matrix is singular or not symmetric.
    pub fn signature(&self) -> Result<(usize, usize), ArithError> {
        if !self.is_symmetric()? {
            return Err(ArithError::Dimension("signature of a non-symmetric matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if Field::vanishes(m.get(k, k)) {
                // No usable diagonal pivot: pull one in by swapping, else by e_k += e_j.
                if let Some(j) = (k + 1..n).find(|&j| !Field::vanishes(m.get(j, j))) {
                    m.swap_sym(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !Field::vanishes(m.get(k, j))) {
                    m.add_sym(k, j);
                } else {
                    return Err(ArithError::Singular);
                }
            }
            let p = m.get(k, k).clone();
            if p > Rational::from_integer(0.into()) {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = m.get(i, k) / &p;
                if Field::vanishes(&f) {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                }
                for j in k..n {
                    let v = m.get(j, i) - &f * m.get(j, k);
                    m.set(j, i, v);
                }
            }
        }
        Ok((pos, neg))
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        let n = self.rows;
        for j in 0..n {
            self.data.swap(a * n + j, b * n + j);
        }
        for i in 0..n {
            self.data.swap(i * n + a, i * n + b);
        }
    }

    /// Congruence by the elementary basis change `e_a ← e_a + e_b`.
    fn add_sym(&mut self, a: usize, b: usize) {
        let n = self.rows;
        for j in 0..n {
            let v = self.get(a, j) + self.get(b, j);
            self.set(a, j, v);
        }
        for i in 0..n {
            let v = self.get(i, a) + self.get(i, b);
            self.set(i, a, v);
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Space;

    fn m(rows: &[&[&str]]) -> ExprMatrix {
        let s = Space::standard();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| s.parse(e).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Independent oracle: explicit Leibniz sum over permutations.
    fn leibniz_det(a: &ExprMatrix) -> RationalExpr {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.rows();
        let mut acc = a.get(0, 0).zero_like();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = a.get(0, 0).one_like();
            for (i, &pi) in p.iter().enumerate() {
                t = &t * a.get(i, pi);
            }
            acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    fn g3() -> ExprMatrix {
        m(&[
            &["b", "0", "0", "a"],
            &["0", "0", "1", "0"],
            &["0", "1", "0", "0"],
            &["a", "0", "0", "(a^2-1)/b"],
        ])
    }

    #[test]
    fn determinant_of_printed_metric() {
        let g = g3();
        let det = g.det().unwrap();
        assert_eq!(det, leibniz_det(&g));
        assert!(det.is_one());
    }

    #[test]
    fn inverse_of_identity_and_metric() {
        let proto = Space::standard().parse("0").unwrap();
        let id = Matrix::identity(4, &proto);
        assert_eq!(id.inverse().unwrap(), id);
        let g = g3();
        let prod = g.try_mul(&g.inverse().unwrap()).unwrap();
        assert_eq!(prod, id);
    }

    #[test]
    fn singular_matrix() {
        let z = m(&[&["0", "0"], &["0", "0"]]);
        assert!(matches!(z.inverse(), Err(ArithError::Singular)));
        let deg = m(&[&["a", "b"], &["2*a", "2*b"]]);
        assert!(matches!(deg.inverse(), Err(ArithError::Singular)));
    }

    #[test]
    fn five_by_five_matches_leibniz() {
        let a = m(&[
            &["a", "1", "0", "b", "2"],
            &["1", "c", "a", "0", "0"],
            &["0", "a", "1", "d", "1"],
            &["b", "0", "d", "1/b", "c"],
            &["2", "0", "1", "c", "a*b"],
        ]);
        assert_eq!(a.det().unwrap(), leibniz_det(&a));
        let inv = a.inverse().unwrap();
        let proto = a.get(0, 0).clone();
        assert_eq!(inv.try_mul(&a).unwrap(), Matrix::identity(5, &proto));
    }

    #[test]
    fn ragged_rows_rejected() {
        let s = Space::standard();
        let one = s.parse("1").unwrap();
        let r = Matrix::from_rows(vec![vec![one.clone(), one.clone()], vec![one]]);
        assert!(matches!(r, Err(ArithError::Dimension(_))));
    }

    fn q(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn signature_by_congruence() {
        assert_eq!(q(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]).signature(), Ok((2, 2)));
        // antidiagonal blocks have no diagonal pivot at all
        assert_eq!(q(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, -1, 0]]).signature(), Ok((2, 2)));
        let g = g3().eval(&Assignment::new().with("a", crate::arith::rational(0, 1)).with("b", crate::arith::rational(1, 1))).unwrap();
        assert_eq!(g.signature(), Ok((2, 2)));
        assert_eq!(q(&[&[0, 0], &[0, 0]]).signature(), Err(ArithError::Singular));
        assert_eq!(q(&[&[1, 1], &[1, 1]]).signature(), Err(ArithError::Singular));
    }

    #[test]
    fn nullspace_and_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).unwrap().iter().all(Field::vanishes));
        }
    }
}
