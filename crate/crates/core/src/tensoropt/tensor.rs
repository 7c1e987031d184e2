//! Order-3 coordinate tensors over `R^{n1} ⊗ R^{n2} ⊗ R^{n3}`.
//!
//! Coordinates are stored axis-major: `x_{jkl}` lives at `(j·n2 + k)·n3 + l`.
//! The JSON form is `{"dims": [n1, n2, n3], "coords": [...]}` in that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matan::GenMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorFile", into = "TensorFile")]
pub struct Tensor3 {
    dims: [usize; 3],
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    dims: [usize; 3],
    coords: Vec<f64>,
}

impl TryFrom<TensorFile> for Tensor3 {
    type Error = Error;

    fn try_from(f: TensorFile) -> Result<Self> {
        Tensor3::from_vec(f.dims, f.coords)
    }
}

impl From<Tensor3> for TensorFile {
    fn from(t: Tensor3) -> Self {
        TensorFile { dims: t.dims, coords: t.coords }
    }
}

fn check_dims(dims: [usize; 3]) -> Result<()> {
    if dims.iter().all(|d| matches!(d, 3 | 4)) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("tensor dims {dims:?} must each be 3 or 4")))
    }
}

impl Tensor3 {
    pub fn zeros(dims: [usize; 3]) -> Result<Self> {
        check_dims(dims)?;
        Ok(Self { dims, coords: vec![0.0; dims.iter().product()] })
    }

    pub fn from_vec(dims: [usize; 3], coords: Vec<f64>) -> Result<Self> {
        check_dims(dims)?;
        if coords.len() != dims.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dims {dims:?}", coords.len())));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dims, coords })
    }

    pub fn from_fn(dims: [usize; 3], mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        check_dims(dims)?;
        let mut coords = Vec::with_capacity(dims.iter().product());
        for j in 0..dims[0] {
            for k in 0..dims[1] {
                for l in 0..dims[2] {
                    coords.push(f(j, k, l));
                }
            }
        }
        Self::from_vec(dims, coords)
    }

    /// Basis tensor `e_{jkl}`.
    pub fn basis(dims: [usize; 3], j: usize, k: usize, l: usize) -> Result<Self> {
        let mut t = Self::zeros(dims)?;
        t.set(j, k, l, 1.0);
        Ok(t)
    }

    /// `a ⊗ b ⊗ c`.
    pub fn rank_one(a: &[f64], b: &[f64], c: &[f64]) -> Result<Self> {
        Self::from_fn([a.len(), b.len(), c.len()], |j, k, l| a[j] * b[k] * c[l])
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    fn offset(&self, j: usize, k: usize, l: usize) -> usize {
        (j * self.dims[1] + k) * self.dims[2] + l
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize, l: usize) -> f64 {
        self.coords[self.offset(j, k, l)]
    }

    pub fn set(&mut self, j: usize, k: usize, l: usize, v: f64) {
        let o = self.offset(j, k, l);
        self.coords[o] = v;
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0.0)
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { dims: self.dims, coords: self.coords.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(Self { dims: self.dims, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dims, other.dims);
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// `Σ x_{jkl} a_j b_k c_l`.
    pub fn trilinear(&self, a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        debug_assert_eq!([a.len(), b.len(), c.len()], self.dims);
        let mut acc = 0.0;
        for (j, &aj) in a.iter().enumerate() {
            for (k, &bk) in b.iter().enumerate() {
                let base = self.offset(j, k, 0);
                let inner: f64 = self.coords[base..base + c.len()].iter().zip(c).map(|(x, cl)| x * cl).sum();
                acc += aj * bk * inner;
            }
        }
        acc
    }

    /// Contracts every axis except `axis` against the two given vectors,
    /// taken in increasing axis order.
    pub fn contract_except(&self, axis: usize, p: &[f64], q: &[f64]) -> Vec<f64> {
        let [n1, n2, n3] = self.dims;
        let mut out = vec![0.0; self.dims[axis]];
        for j in 0..n1 {
            for k in 0..n2 {
                for l in 0..n3 {
                    let x = self.coords[(j * n2 + k) * n3 + l];
                    match axis {
                        0 => out[j] += x * p[k] * q[l],
                        1 => out[k] += x * p[j] * q[l],
                        _ => out[l] += x * p[j] * q[k],
                    }
                }
            }
        }
        out
    }

    /// Reorders axes: output axis `i` is input axis `perm[i]`.
    pub fn permute_axes(&self, perm: [usize; 3]) -> Self {
        let mut sorted = perm;
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2], "not a permutation");
        let dims = [self.dims[perm[0]], self.dims[perm[1]], self.dims[perm[2]]];
        let mut out = Self { dims, coords: vec![0.0; self.coords.len()] };
        for j in 0..self.dims[0] {
            for k in 0..self.dims[1] {
                for l in 0..self.dims[2] {
                    let idx = [j, k, l];
                    out.set(idx[perm[0]], idx[perm[1]], idx[perm[2]], self.get(j, k, l));
                }
            }
        }
        out
    }

    /// Slices `M_s` along `axis`, each indexed by the remaining two axes in order.
    pub fn slices(&self, axis: usize) -> SliceView {
        assert!(axis < 3);
        let [n1, n2, n3] = self.dims;
        let matrices = (0..self.dims[axis])
            .map(|s| match axis {
                0 => GenMatrix::from_fn(n2, n3, |k, l| self.get(s, k, l)),
                1 => GenMatrix::from_fn(n1, n3, |j, l| self.get(j, s, l)),
                _ => GenMatrix::from_fn(n1, n2, |j, k| self.get(j, k, s)),
            })
            .collect();
        SliceView { axis, matrices }
    }
}

/// A tensor seen as a list of matrices along one distinguished axis.
/// For `axis = 2`, `(M_l)_{jk} = x_{jkl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceView {
    pub axis: usize,
    pub matrices: Vec<GenMatrix>,
}

impl SliceView {
    pub fn reassemble(&self) -> Result<Tensor3> {
        let s = self.matrices.len();
        let (r, c) = self.matrices.first().map(GenMatrix::shape).unwrap_or((0, 0));
        if self.matrices.iter().any(|m| m.shape() != (r, c)) {
            return Err(Error::DimensionMismatch("slices of unequal shape".into()));
        }
        let m = &self.matrices;
        match self.axis {
            0 => Tensor3::from_fn([s, r, c], |j, k, l| m[j][(k, l)]),
            1 => Tensor3::from_fn([r, s, c], |j, k, l| m[k][(j, l)]),
            2 => Tensor3::from_fn([r, c, s], |j, k, l| m[l][(j, k)]),
            a => Err(Error::OutOfRange(format!("axis {a}"))),
        }
    }
}

/// `(A ⊗ B ⊗ C) x`, i.e. `x'_{jkl} = Σ A_{jp} B_{kq} C_{lr} x_{pqr}`.
pub fn apply_triple_map(a: &GenMatrix, b: &GenMatrix, c: &GenMatrix, x: &Tensor3) -> Result<Tensor3> {
    let [n1, n2, n3] = x.dims;
    if a.cols() != n1 || b.cols() != n2 || c.cols() != n3 {
        return Err(Error::DimensionMismatch(format!(
            "maps with {} / {} / {} columns for tensor dims {:?}",
            a.cols(),
            b.cols(),
            c.cols(),
            x.dims
        )));
    }
    let out_dims = [a.rows(), b.rows(), c.rows()];
    check_dims(out_dims)?;
    // Mode-by-mode products.
    let t1 = Tensor3::from_fn([out_dims[0], n2, n3], |j, q, r| (0..n1).map(|p| a[(j, p)] * x.get(p, q, r)).sum())?;
    let t2 = Tensor3::from_fn([out_dims[0], out_dims[1], n3], |j, k, r| (0..n2).map(|q| b[(k, q)] * t1.get(j, q, r)).sum())?;
    Tensor3::from_fn(out_dims, |j, k, l| (0..n3).map(|r| c[(l, r)] * t2.get(j, k, r)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Tensor3 {
        Tensor3::from_fn([3, 4, 3], |j, k, l| (j as f64) - 2.0 * (k as f64) + 0.5 * (l as f64) * (j as f64)).unwrap()
    }

    #[test]
    fn dims_are_validated() {
        assert!(Tensor3::zeros([2, 3, 3]).is_err());
        assert!(Tensor3::from_vec([3, 3, 3], vec![0.0; 26]).is_err());
        assert_eq!(Tensor3::from_vec([3, 3, 3], vec![f64::NAN; 27]), Err(Error::NonFinite));
    }

    #[test]
    fn slices_reassemble_exactly() {
        let t = sample();
        for axis in 0..3 {
            assert_eq!(t.slices(axis).reassemble().unwrap(), t);
        }
        let s = t.slices(2);
        assert_eq!(s.matrices[1][(2, 3)], t.get(2, 3, 1));
    }

    #[test]
    fn trilinear_matches_contraction() {
        let t = sample();
        let a = [0.2, -1.0, 0.5];
        let b = [1.0, 0.0, 0.3, -0.7];
        let c = [0.1, 0.9, -0.4];
        let direct = t.trilinear(&a, &b, &c);
        for axis in 0..3 {
            let (v, w, p, q): (&[f64], &[f64], &[f64], &[f64]) = match axis {
                0 => (&a, &a, &b, &c),
                1 => (&b, &b, &a, &c),
                _ => (&c, &c, &a, &b),
            };
            let g = t.contract_except(axis, p, q);
            let _ = w;
            let via: f64 = g.iter().zip(v).map(|(x, y)| x * y).sum();
            assert!((via - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn json_layout() {
        let t = Tensor3::basis([3, 3, 4], 0, 1, 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with("{\"dims\":[3,3,4],\"coords\":["));
        let back: Tensor3 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tensor3>("{\"dims\":[3,3,3],\"coords\":[1.0]}").is_err());
    }

    #[test]
    fn identity_maps_and_rank_one() {
        let t = sample();
        let out = apply_triple_map(&GenMatrix::identity(3), &GenMatrix::identity(4), &GenMatrix::identity(3), &t).unwrap();
        assert_eq!(out, t);
        let a = GenMatrix::from_rows(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, -1.0]]);
        let (u, v, w) = ([1.0, -1.0, 2.0], [0.5, 0.5, 0.0], [3.0, 0.0, 1.0]);
        let x = Tensor3::rank_one(&u, &v, &w).unwrap();
        let y = apply_triple_map(&a, &a, &a, &x).unwrap();
        let expect = Tensor3::rank_one(&a.matvec(&u), &a.matvec(&v), &a.matvec(&w)).unwrap();
        assert!(y.max_abs_diff(&expect) < 1e-14);
        assert!(apply_triple_map(&a, &a, &a, &t).is_err());
    }

    #[test]
    fn permutation_moves_coordinates() {
        let t = sample();
        let p = t.permute_axes([2, 0, 1]);
        assert_eq!(p.dims(), [3, 3, 4]);
        assert_eq!(p.get(1, 2, 3), t.get(2, 3, 1));
    }
}
