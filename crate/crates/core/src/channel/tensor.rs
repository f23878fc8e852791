//! Row-stochastic causal tensors `A^j_i = p(dst = j | src = i)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::prob::value::{mode_of, NORMALIZATION_TOLERANCE};
use crate::prob::{Domain, JointDistribution, Mode, Pmf, Prob, VarSet};

/// Default comparison tolerance for float-mode tensors. Exact tensors are
/// always compared exactly.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A transition matrix between two (possibly joined) variables. Rows whose
/// source symbol has zero probability are flagged unsupported and ignored by
/// every comparison and information sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalTensor {
    source: Domain,
    destination: Domain,
    entries: Vec<Prob>,
    support: Vec<bool>,
}

impl CausalTensor {
    /// Validates shapes, entry range and the row sums of supported rows.
    pub fn new(
        source: Domain,
        destination: Domain,
        entries: Vec<Prob>,
        support: Vec<bool>,
    ) -> Result<Self> {
        let (rows, cols) = (source.len(), destination.len());
        if entries.len() != rows * cols || support.len() != rows {
            return Err(Error::Shape(format!(
                "tensor {source} -> {destination} needs {rows}x{cols} entries and {rows} support flags"
            )));
        }
        let t = CausalTensor { source, destination, entries, support };
        for i in 0..rows {
            if !t.support[i] {
                continue;
            }
            let row = t.row(i);
            if row.iter().any(|p| p.check_unit().is_err()) {
                return Err(Error::Inconsistent(format!("row {i} has entries outside [0, 1]")));
            }
            let sum: Prob = row.iter().sum();
            let ok = match sum {
                Prob::Exact(_) => sum.is_one(),
                Prob::Float(v) => (v - 1.0).abs() <= NORMALIZATION_TOLERANCE,
            };
            if !ok {
                return Err(Error::Inconsistent(format!("row {i} sums to {sum}")));
            }
        }
        Ok(t)
    }

    /// The Kronecker delta over `domain`.
    pub fn identity(domain: &Domain) -> Self {
        let n = domain.len();
        let mut entries = vec![Prob::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Prob::one();
        }
        CausalTensor {
            source: domain.clone(),
            destination: domain.clone(),
            entries,
            support: vec![true; n],
        }
    }

    /// `A^j_i = p(dst = j | src = i)` from the joint. The two sets may share
    /// variables; the shared coordinates are then copied through.
    pub fn from_joint(joint: &JointDistribution, src: &VarSet, dst: &VarSet) -> Result<Self> {
        let (source, destination, mut entries) = joint.table(src, dst)?;
        let cols = destination.len();
        let mut support = vec![false; source.len()];
        for (i, flag) in support.iter_mut().enumerate() {
            let row = &mut entries[i * cols..(i + 1) * cols];
            let mass: Prob = row.iter().sum();
            if mass.is_zero() {
                continue;
            }
            *flag = true;
            for p in row.iter_mut() {
                *p = &*p / &mass;
            }
        }
        Ok(CausalTensor { source, destination, entries, support })
    }

    pub fn source(&self) -> &Domain {
        &self.source
    }

    pub fn destination(&self) -> &Domain {
        &self.destination
    }

    pub fn rows(&self) -> usize {
        self.source.len()
    }

    pub fn cols(&self) -> usize {
        self.destination.len()
    }

    pub fn row(&self, i: usize) -> &[Prob] {
        let c = self.cols();
        &self.entries[i * c..(i + 1) * c]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Prob {
        &self.entries[i * self.cols() + j]
    }

    pub fn entries(&self) -> &[Prob] {
        &self.entries
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn is_supported(&self, i: usize) -> bool {
        self.support[i]
    }

    pub fn mode(&self) -> Mode {
        mode_of(&self.entries)
    }

    /// Cascade `T^k_i = Σ_j A^j_i B^k_j`.
    pub fn compose(&self, second: &CausalTensor) -> Result<CausalTensor> {
        if !self.destination.same_shape(&second.source) {
            return Err(Error::Shape(format!(
                "cannot chain {} -> {} into {} -> {}",
                self.source, self.destination, second.source, second.destination
            )));
        }
        let (n, m, k) = (self.rows(), self.cols(), second.cols());
        let mut entries = Vec::with_capacity(n * k);
        for i in 0..n {
            for c in 0..k {
                let mut acc = Prob::zero();
                for j in 0..m {
                    let a = self.entry(i, j);
                    if !a.is_zero() {
                        acc = &acc + &(a * second.entry(j, c));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(CausalTensor {
            source: self.source.clone(),
            destination: second.destination.clone(),
            entries,
            support: self.support.clone(),
        })
    }

    /// `p^j = Σ_i p^i A^j_i`.
    pub fn apply(&self, input: &Pmf) -> Result<Pmf> {
        if !input.domain().same_shape(&self.source) {
            return Err(Error::Shape(format!(
                "pmf over {} does not match tensor source {}",
                input.domain(),
                self.source
            )));
        }
        let mut out = vec![Prob::zero(); self.cols()];
        for (i, p) in input.probs().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !self.support[i] {
                return Err(Error::Inconsistent(format!(
                    "input puts mass on unsupported source symbol {}",
                    self.source.label(i)
                )));
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = &*o + &(p * self.entry(i, j));
            }
        }
        Ok(Pmf::from_parts(self.destination.clone(), out))
    }

    /// The Bayes-inverted tensor `A‡^i_j = A^j_i p^i / p^j`, mapping the
    /// destination pmf back onto `src_pmf`.
    pub fn reconstruction(&self, src_pmf: &Pmf) -> Result<CausalTensor> {
        let dst_pmf = self.apply(src_pmf)?;
        let (n, m) = (self.rows(), self.cols());
        let mut entries = vec![Prob::zero(); m * n];
        let mut support = vec![false; m];
        for j in 0..m {
            let q = dst_pmf.prob(j);
            if q.is_zero() {
                continue;
            }
            support[j] = true;
            for i in 0..n {
                let p = src_pmf.prob(i);
                if !p.is_zero() {
                    entries[j * n + i] = &(self.entry(i, j) * p) / q;
                }
            }
        }
        Ok(CausalTensor {
            source: self.destination.clone(),
            destination: self.source.clone(),
            entries,
            support,
        })
    }

    /// True iff all supported rows coincide (within `tol` unless both exact).
    pub fn is_no_information(&self, tol: f64) -> bool {
        let mut supported = (0..self.rows()).filter(|&i| self.support[i]);
        let Some(first) = supported.next() else {
            return true;
        };
        let reference = self.row(first);
        supported.all(|i| self.row(i).iter().zip(reference).all(|(a, b)| a.close_to(b, tol)))
    }

    /// Elementwise equality on the rows supported by `self`.
    pub fn approx_eq(&self, other: &CausalTensor, tol: f64) -> Result<bool> {
        if !self.source.same_shape(&other.source) || !self.destination.same_shape(&other.destination)
        {
            return Err(Error::Shape(format!(
                "cannot compare {} -> {} with {} -> {}",
                self.source, self.destination, other.source, other.destination
            )));
        }
        for i in (0..self.rows()).filter(|&i| self.support[i]) {
            if !other.support[i] {
                return Ok(false);
            }
            if !self.row(i).iter().zip(other.row(i)).all(|(a, b)| a.close_to(b, tol)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same tensor with float entries.
    pub fn to_float(&self) -> CausalTensor {
        CausalTensor {
            entries: self.entries.iter().map(Prob::to_float).collect(),
            ..self.clone()
        }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows()).map(|i| self.row(i).iter().map(Prob::to_f64).collect()).collect()
    }
}

impl fmt::Display for CausalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows())
            .map(|i| {
                if self.support[i] {
                    self.row(i).iter().map(|p| p.to_string()).collect()
                } else {
                    vec!["-".to_string(); self.cols()]
                }
            })
            .collect();
        let row_labels: Vec<String> = (0..self.rows()).map(|i| self.source.label(i)).collect();
        let col_labels: Vec<String> = (0..self.cols()).map(|j| self.destination.label(j)).collect();
        let lw = row_labels.iter().map(String::len).max().unwrap_or(0).max(self.source.to_string().len());
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                cells.iter().map(|r| r[j].len()).chain([col_labels[j].len()]).max().unwrap_or(1)
            })
            .collect();
        write!(f, "{:>lw$} |", format!("{}", self.source))?;
        for (j, l) in col_labels.iter().enumerate() {
            write!(f, " {:>w$}", l, w = widths[j])?;
        }
        writeln!(f)?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:>lw$} |", row_labels[i])?;
            for (j, c) in row.iter().enumerate() {
                write!(f, " {:>w$}", c, w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
