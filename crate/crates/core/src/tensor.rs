//! Dense N-dimensional tensors and the mixed-radix index mapping that turns a
//! matrix into a high-order tensor and back.
//!
//! Storage is always a flat row-major `Vec<f64>`; transposes and reorderings
//! are explicit data movement, never stride tricks.

use crate::error::{Error, Result};

/// Dense N-dimensional numeric array, row-major.
///
/// Values are immutable through the public API; the training code obtains
/// exclusive mutable access through [`DenseTensor::data_mut`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl DenseTensor {
    /// Builds a tensor, checking that `product(shape) == data.len()` and that
    /// every extent is at least 1.
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if shape.iter().any(|&s| s == 0) {
            return Err(Error::Shape(format!("zero extent in shape {shape:?}")));
        }
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::Shape(format!(
                "shape {shape:?} implies {numel} elements, data has {}",
                data.len()
            )));
        }
        Ok(Self { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let numel = shape.iter().product();
        Self { shape, data: vec![0.0; numel] }
    }

    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(usize) -> f64) -> Self {
        let numel: usize = shape.iter().product();
        Self { shape, data: (0..numel).map(|i| f(i)).collect() }
    }

    /// Rank-2 convenience constructor.
    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        Self::new(vec![rows, cols], data)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    /// Number of rows of a rank-2 tensor.
    pub fn rows(&self) -> usize {
        debug_assert_eq!(self.rank(), 2);
        self.shape[0]
    }

    /// Number of columns of a rank-2 tensor.
    pub fn cols(&self) -> usize {
        debug_assert_eq!(self.rank(), 2);
        self.shape[1]
    }

    #[inline]
    pub fn at2(&self, i: usize, j: usize) -> f64 {
        debug_assert_eq!(self.rank(), 2);
        self.data[i * self.shape[1] + j]
    }

    #[inline]
    pub fn set2(&mut self, i: usize, j: usize, v: f64) {
        debug_assert_eq!(self.rank(), 2);
        self.data[i * self.shape[1] + j] = v;
    }

    /// Reinterprets the flat data under a new shape with equal element count.
    pub fn reshape(mut self, shape: Vec<usize>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != self.data.len() || shape.iter().any(|&s| s == 0) {
            return Err(Error::Shape(format!(
                "cannot reshape {} elements to {shape:?}",
                self.data.len()
            )));
        }
        self.shape = shape;
        Ok(self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Flat offset of a multi-index (row-major).
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut off = 0;
        for (i, (&d, &s)) in idx.iter().zip(&self.shape).enumerate() {
            debug_assert!(d < s, "index {d} out of bounds for axis {i} (extent {s})");
            off = off * s + d;
        }
        off
    }
}

/// Factorization of one matrix dimension into integer factors
/// `(I_1 .. I_N)` whose product equals the dimension.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DimFactorization {
    factors: Vec<usize>,
}

impl DimFactorization {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("empty dimension factorization".into()));
        }
        if factors.iter().any(|&f| f == 0) {
            return Err(Error::Shape(format!("zero factor in {factors:?}")));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> usize {
        self.factors.iter().product()
    }

    /// Checks `product(factors) == dim`.
    pub fn check_product(&self, dim: usize) -> Result<()> {
        if self.product() != dim {
            return Err(Error::Shape(format!(
                "factorization {:?} has product {}, expected {dim}",
                self.factors,
                self.product()
            )));
        }
        Ok(())
    }
}

impl From<&[usize]> for DimFactorization {
    fn from(f: &[usize]) -> Self {
        DimFactorization::new(f.to_vec()).expect("invalid factor list")
    }
}

impl<const N: usize> From<[usize; N]> for DimFactorization {
    fn from(f: [usize; N]) -> Self {
        DimFactorization::new(f.to_vec()).expect("invalid factor list")
    }
}

/// Splits `index` into big-endian digits under the mixed radices
/// (digit 1 is most significant): `index = sum_k d_k * prod_{m>k} r_m`.
pub fn mixed_radix_encode(index: usize, radices: &DimFactorization) -> Result<Vec<usize>> {
    let total = radices.product();
    if index >= total {
        return Err(Error::Range(format!(
            "index {index} out of range for radices {:?} (product {total})",
            radices.factors()
        )));
    }
    let mut digits = vec![0usize; radices.len()];
    let mut rem = index;
    for (k, &r) in radices.factors().iter().enumerate().rev() {
        digits[k] = rem % r;
        rem /= r;
    }
    Ok(digits)
}

/// Inverse of [`mixed_radix_encode`]: recombines big-endian digits into a flat index.
pub fn mixed_radix_decode(digits: &[usize], radices: &DimFactorization) -> Result<usize> {
    if digits.len() != radices.len() {
        return Err(Error::Shape(format!(
            "got {} digits for {} radices",
            digits.len(),
            radices.len()
        )));
    }
    let mut index = 0usize;
    for (&d, &r) in digits.iter().zip(radices.factors()) {
        if d >= r {
            return Err(Error::Range(format!("digit {d} out of range for radix {r}")));
        }
        index = index * r + d;
    }
    Ok(index)
}

/// Reshapes-and-transposes an `I x J` matrix into the rank-N tensor with axis
/// extents `[I_1*J_1, ..., I_N*J_N]`.
///
/// Element `(i, j)` lands at the multi-index whose k-th combined coordinate is
/// `i_k * J_k + j_k`, where `(i_1..i_N)` and `(j_1..j_N)` are the big-endian
/// mixed-radix digits of `i` and `j`. The map is a bijection on elements, so
/// the multiset of values and the Frobenius norm are preserved exactly.
pub fn matrix_to_mpo_tensor(
    w: &DenseTensor,
    fi: &DimFactorization,
    fj: &DimFactorization,
) -> Result<DenseTensor> {
    if w.rank() != 2 {
        return Err(Error::Shape(format!("expected rank-2 tensor, got rank {}", w.rank())));
    }
    if fi.len() != fj.len() {
        return Err(Error::Shape(format!(
            "row factorization has {} factors, column factorization {}",
            fi.len(),
            fj.len()
        )));
    }
    let (rows, cols) = (w.rows(), w.cols());
    fi.check_product(rows)?;
    fj.check_product(cols)?;

    let out_shape: Vec<usize> = fi
        .factors()
        .iter()
        .zip(fj.factors())
        .map(|(&ik, &jk)| ik * jk)
        .collect();
    let mut out = DenseTensor::zeros(out_shape);

    let n = fi.len();
    let mut combined = vec![0usize; n];
    for i in 0..rows {
        let di = mixed_radix_encode(i, fi)?;
        for j in 0..cols {
            let dj = mixed_radix_encode(j, fj)?;
            for k in 0..n {
                combined[k] = di[k] * fj.factors()[k] + dj[k];
            }
            let off = out.flat_index(&combined);
            out.data_mut()[off] = w.at2(i, j);
        }
    }
    Ok(out)
}

/// Exact inverse of [`matrix_to_mpo_tensor`].
pub fn mpo_tensor_to_matrix(
    t: &DenseTensor,
    fi: &DimFactorization,
    fj: &DimFactorization,
) -> Result<DenseTensor> {
    if fi.len() != fj.len() || t.rank() != fi.len() {
        return Err(Error::Shape(format!(
            "rank {} tensor does not match factorizations of length {}/{}",
            t.rank(),
            fi.len(),
            fj.len()
        )));
    }
    for (k, ((&ik, &jk), &ext)) in fi
        .factors()
        .iter()
        .zip(fj.factors())
        .zip(t.shape())
        .enumerate()
    {
        if ik * jk != ext {
            return Err(Error::Shape(format!(
                "axis {k} extent {ext} != I_k*J_k = {}",
                ik * jk
            )));
        }
    }
    let (rows, cols) = (fi.product(), fj.product());
    let mut out = DenseTensor::zeros(vec![rows, cols]);

    let n = fi.len();
    let mut combined = vec![0usize; n];
    for i in 0..rows {
        let di = mixed_radix_encode(i, fi)?;
        for j in 0..cols {
            let dj = mixed_radix_encode(j, fj)?;
            for k in 0..n {
                combined[k] = di[k] * fj.factors()[k] + dj[k];
            }
            let off = t.flat_index(&combined);
            out.set2(i, j, t.data()[off]);
        }
    }
    Ok(out)
}
