//! Joint distributions over named finite-alphabet variables.

use std::collections::HashSet;
use std::fmt;

use super::alphabet::{Alphabet, Domain, Symbol};
use super::value::{bin_small_exact, check_normalized, mode_of, Mode, Pmf, Prob};
use crate::error::{Error, Result};

/// An ordered, duplicate-free list of variable names. A set with more than one
/// member stands for the joined variable `XY = X ∪ Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Vec<String>);

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Format("variable set must not be empty".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(Error::Format("empty variable name".into()));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Format(format!("variable `{n}` listed twice")));
            }
        }
        Ok(VarSet(names))
    }

    pub fn single(name: impl Into<String>) -> Self {
        VarSet(vec![name.into()])
    }

    /// Parses `"X"` or `"X+Y"` (a joined variable).
    pub fn parse(text: &str) -> Result<Self> {
        VarSet::new(text.split('+').map(str::trim))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.iter().any(|n| n == name)
    }

    /// Members of `self` followed by members of `other` not already present.
    pub fn union(&self, other: &VarSet) -> VarSet {
        let mut names = self.0.clone();
        for n in &other.0 {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarSet(names)
    }

    /// First shared member, if any.
    pub fn overlap(&self, other: &VarSet) -> Option<&str> {
        self.0.iter().find(|n| other.contains(n)).map(String::as_str)
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.overlap(other).is_none()
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0.iter().all(|n| other.contains(n))
    }

    /// Same members regardless of order.
    pub fn same_members(&self, other: &VarSet) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    /// Members in sorted order, for order-insensitive comparisons.
    pub fn sorted(&self) -> VarSet {
        let mut names = self.0.clone();
        names.sort();
        VarSet(names)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("+"))
    }
}

impl From<&str> for VarSet {
    fn from(name: &str) -> Self {
        VarSet::single(name)
    }
}

/// Fails with [`Error::Overlap`] when the two sets share a member.
pub fn require_disjoint(a: &VarSet, b: &VarSet) -> Result<()> {
    match a.overlap(b) {
        Some(n) => Err(Error::Overlap(n.to_string())),
        None => Ok(()),
    }
}

/// The full joint pmf over the Cartesian product of every variable's alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    domain: Domain,
    probs: Vec<Prob>,
}

impl JointDistribution {
    /// `probs` is indexed row-major over the alphabets (first variable slowest).
    pub fn new(names: Vec<String>, alphabets: Vec<Alphabet>, probs: Vec<Prob>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Format(format!("duplicate variable name `{n}`")));
            }
        }
        let domain = Domain::new(names, alphabets)?;
        if probs.len() != domain.len() {
            return Err(Error::Shape(format!(
                "joint over {domain} needs {} entries, got {}",
                domain.len(),
                probs.len()
            )));
        }
        check_normalized(&probs)?;
        Ok(JointDistribution { domain, probs })
    }

    /// Builds a joint from listed outcomes; unlisted cells get probability zero
    /// and repeated outcomes accumulate. Alphabets default to the sorted
    /// observed symbols.
    pub fn from_outcomes(
        names: Vec<String>,
        alphabets: Option<Vec<Alphabet>>,
        outcomes: Vec<(Vec<Symbol>, Prob)>,
    ) -> Result<Self> {
        let n = names.len();
        for (row, _) in &outcomes {
            if row.len() != n {
                return Err(Error::Format(format!(
                    "outcome has {} symbols, expected {n}",
                    row.len()
                )));
            }
        }
        let alphabets = match alphabets {
            Some(a) => a,
            None => (0..n)
                .map(|k| {
                    let mut seen: Vec<Symbol> = Vec::new();
                    for (row, _) in &outcomes {
                        if !seen.contains(&row[k]) {
                            seen.push(row[k].clone());
                        }
                    }
                    Alphabet::sorted(seen)
                })
                .collect::<Result<_>>()?,
        };
        let domain = Domain::new(names.clone(), alphabets.clone())?;
        let mut probs = vec![Prob::zero(); domain.len()];
        let mut mode = Mode::Exact;
        for (row, p) in outcomes {
            mode = mode.combine(p.mode());
            let idx = domain.index_of(&row)?;
            probs[idx] = &probs[idx] + &p;
        }
        if mode == Mode::Float {
            probs = probs.into_iter().map(|p| p.to_float()).collect();
        }
        JointDistribution::new(names, alphabets, probs)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn names(&self) -> &[String] {
        self.domain.names()
    }

    pub fn probs(&self) -> &[Prob] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn variable_count(&self) -> usize {
        self.domain.names().len()
    }

    pub fn mode(&self) -> Mode {
        mode_of(&self.probs)
    }

    /// The same joint with every entry converted to float.
    pub fn to_float(&self) -> JointDistribution {
        JointDistribution {
            domain: self.domain.clone(),
            probs: self.probs.iter().map(Prob::to_float).collect(),
        }
    }

    /// All variables as a single set, in declaration order.
    pub fn all(&self) -> VarSet {
        VarSet(self.names().to_vec())
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Name(name.to_string()))
    }

    pub fn alphabet(&self, name: &str) -> Result<&Alphabet> {
        Ok(&self.domain.alphabets()[self.var_index(name)?])
    }

    fn positions(&self, vars: &VarSet) -> Result<Vec<usize>> {
        vars.names().iter().map(|n| self.var_index(n)).collect()
    }

    /// Domain of a (possibly joined) variable set, in the set's order.
    pub fn domain_of(&self, vars: &VarSet) -> Result<Domain> {
        let pos = self.positions(vars)?;
        Domain::new(
            vars.names().to_vec(),
            pos.iter().map(|&k| self.domain.alphabets()[k].clone()).collect(),
        )
    }

    /// Calls `f(per_variable_indices, prob)` for every cell with positive mass.
    fn for_each_supported<'a>(&'a self, mut f: impl FnMut(&[usize], &'a Prob)) {
        let sizes: Vec<usize> = self.domain.alphabets().iter().map(Alphabet::len).collect();
        let mut digits = vec![0usize; sizes.len()];
        for p in &self.probs {
            if !p.is_zero() {
                f(&digits, p);
            }
            for k in (0..sizes.len()).rev() {
                digits[k] += 1;
                if digits[k] < sizes[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    fn projector(&self, vars: &VarSet) -> Result<impl Fn(&[usize]) -> usize> {
        let pos = self.positions(vars)?;
        let sizes: Vec<usize> = pos.iter().map(|&k| self.domain.alphabets()[k].len()).collect();
        Ok(move |digits: &[usize]| {
            pos.iter().zip(&sizes).fold(0, |acc, (&k, &s)| acc * s + digits[k])
        })
    }

    /// Adds every supported cell into bin `bin(digits)`.
    fn accumulate(&self, len: usize, bin: impl Fn(&[usize]) -> usize) -> Vec<Prob> {
        let mut items = Vec::new();
        self.for_each_supported(|d, p| items.push((bin(d), p)));
        if let Some(out) = bin_small_exact(len, &items) {
            return out;
        }
        let mut out = vec![self.zero(); len];
        for (k, p) in items {
            out[k] = &out[k] + p;
        }
        out
    }

    /// Marginal pmf of a variable set.
    pub fn pmf(&self, vars: &VarSet) -> Result<Pmf> {
        let domain = self.domain_of(vars)?;
        let project = self.projector(vars)?;
        let probs = self.accumulate(domain.len(), project);
        Ok(Pmf::from_parts(domain, probs))
    }

    /// The joint table of two variable sets as a row-major `|a| x |b|` matrix.
    /// The sets may overlap, in which case cells that disagree on a shared
    /// variable are zero.
    pub fn table(&self, a: &VarSet, b: &VarSet) -> Result<(Domain, Domain, Vec<Prob>)> {
        let da = self.domain_of(a)?;
        let db = self.domain_of(b)?;
        let pa = self.projector(a)?;
        let pb = self.projector(b)?;
        let cols = db.len();
        let probs = self.accumulate(da.len() * cols, |d| pa(d) * cols + pb(d));
        Ok((da, db, probs))
    }

    /// Joint over `vars` only, with variables in the order given.
    pub fn marginalize(&self, vars: &VarSet) -> Result<JointDistribution> {
        let pmf = self.pmf(vars)?;
        let domain = pmf.domain().clone();
        Ok(JointDistribution { domain, probs: pmf.probs().to_vec() })
    }

    /// `p(target | given = given_value)`.
    pub fn conditional_pmf(
        &self,
        target: &VarSet,
        given: &VarSet,
        given_value: &[Symbol],
    ) -> Result<Pmf> {
        let (dg, dt, table) = self.table(given, target)?;
        let row = dg.index_of(given_value)?;
        let cols = dt.len();
        let slice = &table[row * cols..(row + 1) * cols];
        let mass: Prob = slice.iter().sum();
        if mass.is_zero() {
            let shown: Vec<String> = given_value.iter().map(Symbol::to_string).collect();
            return Err(Error::UnsupportedCondition(format!("{given} = ({})", shown.join(","))));
        }
        Ok(Pmf::from_parts(dt, slice.iter().map(|p| p / &mass).collect()))
    }

    /// The joint as a pmf over its full domain.
    pub fn as_pmf(&self) -> Pmf {
        Pmf::from_parts(self.domain.clone(), self.probs.clone())
    }

    /// Outcomes with positive mass, as symbol tuples.
    pub fn support(&self) -> Vec<(Vec<Symbol>, Prob)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (self.domain.tuple(k).into_iter().cloned().collect(), p.clone()))
            .collect()
    }

    /// Appends a variable computed from each outcome. The new variable's
    /// alphabet is `alphabet` when given, else the sorted observed values.
    pub fn with_derived(
        &self,
        name: &str,
        alphabet: Option<Alphabet>,
        f: impl Fn(&[&Symbol]) -> Symbol,
    ) -> Result<JointDistribution> {
        if self.var_index(name).is_ok() {
            return Err(Error::Format(format!("variable `{name}` already exists")));
        }
        let mut names = self.names().to_vec();
        names.push(name.to_string());
        let mut outcomes = Vec::new();
        for (row, p) in self.support() {
            let refs: Vec<&Symbol> = row.iter().collect();
            let extra = f(&refs);
            let mut row = row;
            row.push(extra);
            outcomes.push((row, p));
        }
        let alphabets = match alphabet {
            Some(a) => {
                let mut all = self.domain.alphabets().to_vec();
                all.push(a);
                Some(all)
            }
            None => {
                let mut seen: Vec<Symbol> = Vec::new();
                for (row, _) in &outcomes {
                    let s = row.last().expect("non-empty row");
                    if !seen.contains(s) {
                        seen.push(s.clone());
                    }
                }
                let mut all = self.domain.alphabets().to_vec();
                all.push(Alphabet::sorted(seen)?);
                Some(all)
            }
        };
        JointDistribution::from_outcomes(names, alphabets, outcomes)
    }

    fn zero(&self) -> Prob {
        match self.mode() {
            Mode::Exact => Prob::zero(),
            Mode::Float => Prob::float(0.0),
        }
    }
}
