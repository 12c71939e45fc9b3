use crate::{Error, Result};

/// Ordered tensor factorisation of a Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    dims: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::arg("shape must have at least one subsystem"));
        }
        if let Some(&bad) = dims.iter().find(|&&d| d == 0) {
            return Err(Error::arg(format!("subsystem dimension {bad} is not positive")));
        }
        crate::tolerance::checked_product(dims.iter().copied())?;
        Ok(Shape { dims, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dims.len() {
            return Err(Error::arg(format!(
                "{} labels for {} subsystems",
                labels.len(),
                self.dims.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Single subsystem of dimension `d`.
    pub fn single(d: usize) -> Self {
        Shape {
            dims: vec![d],
            labels: None,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Total Hilbert-space dimension.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Sub-shape made of `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Shape {
        Shape {
            dims: indices.iter().map(|&k| self.dims[k]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&k| l[k].clone()).collect()),
        }
    }

    /// Concatenation `self ⊗ other`.
    pub fn concat(&self, other: &Shape) -> Shape {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Shape { dims, labels }
    }

    /// Sorted, deduplicated copy of `subset`, rejecting out-of-range or
    /// repeated indices.
    pub(crate) fn validate_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::arg(format!("subsystem index {} repeated", w[0])));
            }
        }
        if let Some(&k) = sorted.iter().find(|&&k| k >= self.dims.len()) {
            return Err(Error::arg(format!(
                "subsystem index {k} out of range for {} subsystems",
                self.dims.len()
            )));
        }
        Ok(sorted)
    }

}
