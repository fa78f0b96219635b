//! Dense real 4-D latent tensors, shape C x T x H x W (channels, frames,
//! height, width), stored row-major with `w` contiguous.

use crate::error::{Error, Result};

/// Tensor dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub c: usize,
    pub t: usize,
    pub h: usize,
    pub w: usize,
}

impl Dims {
    pub fn new(c: usize, t: usize, h: usize, w: usize) -> Dims {
        Dims { c, t, h, w }
    }

    pub fn len(&self) -> usize {
        self.c * self.t * self.h * self.w
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-channel volume T*H*W.
    pub fn volume(&self) -> usize {
        self.t * self.h * self.w
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 || self.t == 0 || self.h == 0 || self.w == 0 {
            return Err(Error::InvalidShape(format!(
                "zero-sized dimension in {}x{}x{}x{}",
                self.c, self.t, self.h, self.w
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}x{}x{}", self.c, self.t, self.h, self.w)
    }
}

/// Real-valued latent tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentTensor {
    dims: Dims,
    data: Vec<f64>,
}

impl LatentTensor {
    pub fn zeros(dims: Dims) -> LatentTensor {
        LatentTensor {
            dims,
            data: vec![0.0; dims.len()],
        }
    }

    pub fn splat(dims: Dims, value: f64) -> LatentTensor {
        LatentTensor {
            dims,
            data: vec![value; dims.len()],
        }
    }

    pub fn from_vec(dims: Dims, data: Vec<f64>) -> Result<LatentTensor> {
        dims.validate()?;
        if data.len() != dims.len() {
            return Err(Error::InvalidShape(format!(
                "data length {} does not match dims {} ({} entries)",
                data.len(),
                dims,
                dims.len()
            )));
        }
        Ok(LatentTensor { dims, data })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Flat offset of (c, t, h, w).
    pub fn offset(&self, c: usize, t: usize, h: usize, w: usize) -> usize {
        ((c * self.dims.t + t) * self.dims.h + h) * self.dims.w + w
    }

    pub fn get(&self, c: usize, t: usize, h: usize, w: usize) -> f64 {
        self.data[self.offset(c, t, h, w)]
    }

    pub fn set(&mut self, c: usize, t: usize, h: usize, w: usize, value: f64) {
        let idx = self.offset(c, t, h, w);
        self.data[idx] = value;
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scale(&self, factor: f64) -> LatentTensor {
        LatentTensor {
            dims: self.dims,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    fn check_same_dims(&self, other: &LatentTensor) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::InvalidShape(format!(
                "dimension mismatch: {} vs {}",
                self.dims, other.dims
            )));
        }
        Ok(())
    }

    /// self + factor * other, elementwise.
    pub fn add_scaled(&self, other: &LatentTensor, factor: f64) -> Result<LatentTensor> {
        self.check_same_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + factor * b)
            .collect();
        Ok(LatentTensor {
            dims: self.dims,
            data,
        })
    }

    pub fn add(&self, other: &LatentTensor) -> Result<LatentTensor> {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &LatentTensor) -> Result<LatentTensor> {
        self.add_scaled(other, -1.0)
    }

    pub fn max_abs_diff(&self, other: &LatentTensor) -> Result<f64> {
        self.check_same_dims(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs())))
    }

    /// Mean of squared elementwise differences over all C*T*H*W entries.
    pub fn mean_sq_diff(&self, other: &LatentTensor) -> Result<f64> {
        self.check_same_dims(other)?;
        let sum: f64 = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok(sum / self.data.len() as f64)
    }

    pub fn sum_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// Euclidean norm of the flattened tensor.
    pub fn norm(&self) -> f64 {
        self.sum_sq().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_rejects_bad_length() {
        let err = LatentTensor::from_vec(Dims::new(1, 2, 2, 2), vec![0.0; 7]);
        assert!(matches!(err, Err(Error::InvalidShape(_))));
    }

    #[test]
    fn from_vec_rejects_zero_dim() {
        let err = LatentTensor::from_vec(Dims::new(1, 0, 2, 2), vec![]);
        assert!(matches!(err, Err(Error::InvalidShape(_))));
    }

    #[test]
    fn offset_is_row_major() {
        let dims = Dims::new(2, 3, 4, 5);
        let z = LatentTensor::zeros(dims);
        assert_eq!(z.offset(0, 0, 0, 0), 0);
        assert_eq!(z.offset(0, 0, 0, 1), 1);
        assert_eq!(z.offset(0, 0, 1, 0), 5);
        assert_eq!(z.offset(0, 1, 0, 0), 20);
        assert_eq!(z.offset(1, 0, 0, 0), 60);
        assert_eq!(z.offset(1, 2, 3, 4), 119);
    }

    #[test]
    fn add_scaled_mismatch_errors() {
        let a = LatentTensor::zeros(Dims::new(1, 1, 2, 2));
        let b = LatentTensor::zeros(Dims::new(1, 1, 2, 3));
        assert!(a.add_scaled(&b, 1.0).is_err());
    }

    #[test]
    fn mean_sq_diff_constant_offset() {
        let a = LatentTensor::splat(Dims::new(1, 2, 2, 2), 1.0);
        let b = LatentTensor::splat(Dims::new(1, 2, 2, 2), 4.0);
        assert_eq!(a.mean_sq_diff(&b).unwrap(), 9.0);
    }
}
