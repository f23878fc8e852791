//! Transfer entropy as a multiplexed channel: the cause's past is transmitted
//! to the effect over one sub-channel per effect history.

use crate::channel::CausalTensor;
use crate::error::{Error, Result};
use crate::prob::info::{clamp_nonnegative, plogr};
use crate::prob::{Alphabet, Domain, JointDistribution, Pmf, Prob, Symbol, VarSet};

/// Equal-length symbol sequences, one per named variable.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    names: Vec<String>,
    alphabets: Vec<Alphabet>,
    columns: Vec<Vec<Symbol>>,
}

impl TimeSeries {
    /// Alphabets default to the sorted observed symbols of each column.
    pub fn new(
        names: Vec<String>,
        columns: Vec<Vec<Symbol>>,
        alphabets: Option<Vec<Alphabet>>,
    ) -> Result<Self> {
        if names.len() != columns.len() || names.is_empty() {
            return Err(Error::Format(format!(
                "{} names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        let len = columns[0].len();
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::Format("series columns differ in length".into()));
        }
        let alphabets = match alphabets {
            Some(a) => a,
            None => columns
                .iter()
                .map(|c| {
                    let mut s = c.clone();
                    s.sort();
                    s.dedup();
                    Alphabet::new(s)
                })
                .collect::<Result<_>>()?,
        };
        for ((name, col), a) in names.iter().zip(&columns).zip(&alphabets) {
            if let Some(bad) = col.iter().find(|s| a.index_of(s).is_none()) {
                return Err(Error::Alphabet { variable: name.clone(), symbol: bad.to_string() });
            }
        }
        Ok(TimeSeries { names, alphabets, columns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn column(&self, name: &str) -> Result<(usize, &[Symbol])> {
        let k = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Name(name.to_string()))?;
        Ok((k, &self.columns[k]))
    }
}

/// History length `ℓ` of the effect and cause length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeConfig {
    pub history: usize,
    pub cause: usize,
}

impl TeConfig {
    pub fn new(history: usize, cause: usize) -> Result<Self> {
        if history == 0 || cause == 0 {
            return Err(Error::Format("history and cause lengths must be at least 1".into()));
        }
        Ok(TeConfig { history, cause })
    }
}

/// One variable of a lagged embedding: `len` consecutive values of `variable`
/// ending `lag` steps before the current time (`lag = 0` is the present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagSpec {
    pub name: String,
    pub variable: String,
    pub lag: usize,
    pub len: usize,
}

fn window_symbol(values: &[Symbol]) -> Symbol {
    if values.len() == 1 {
        values[0].clone()
    } else {
        Symbol::Text(values.iter().map(Symbol::to_string).collect::<Vec<_>>().join(","))
    }
}

/// Empirical exact joint over lagged windows of several series variables.
/// Returns the joint and the number of windows used.
pub fn lagged_joint(series: &TimeSeries, specs: &[LagSpec]) -> Result<(JointDistribution, usize)> {
    if specs.is_empty() {
        return Err(Error::Format("no embedding variables".into()));
    }
    let reach = specs.iter().map(|s| s.lag + s.len - 1).max().unwrap_or(0);
    let n = series.len();
    if n <= reach {
        return Err(Error::Length { length: n, required: reach });
    }
    let cols: Vec<(usize, &[Symbol])> =
        specs.iter().map(|s| series.column(&s.variable)).collect::<Result<_>>()?;
    let mut counts: std::collections::BTreeMap<Vec<Symbol>, i64> = Default::default();
    for t in reach..n {
        let row: Vec<Symbol> = specs
            .iter()
            .zip(&cols)
            .map(|(s, (_, c))| {
                let end = t - s.lag + 1;
                window_symbol(&c[end - s.len..end])
            })
            .collect();
        *counts.entry(row).or_insert(0) += 1;
    }
    let windows = n - reach;
    let alphabets = specs
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let (idx, _) = cols[k];
            if s.len == 1 {
                Ok(series.alphabets[idx].clone())
            } else {
                let mut seen: Vec<Symbol> = counts.keys().map(|r| r[k].clone()).collect();
                seen.sort();
                seen.dedup();
                Alphabet::new(seen)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let outcomes = counts.into_iter().map(|(r, c)| (r, Prob::ratio(c, windows as i64))).collect();
    let names = specs.iter().map(|s| s.name.clone()).collect();
    Ok((JointDistribution::from_outcomes(names, Some(alphabets), outcomes)?, windows))
}

/// Joint over (cause past, effect past, effect) from sliding windows.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub joint: JointDistribution,
    pub cause_past: VarSet,
    pub effect_past: VarSet,
    pub effect: VarSet,
    pub windows: usize,
}

/// Sliding-window embedding; needs more than `ℓ + m` steps.
pub fn embed(series: &TimeSeries, cause: &str, effect: &str, cfg: TeConfig) -> Result<Embedding> {
    if cause == effect {
        return Err(Error::Overlap(cause.to_string()));
    }
    series.column(cause)?;
    series.column(effect)?;
    let required = cfg.history + cfg.cause;
    if series.len() <= required {
        return Err(Error::Length { length: series.len(), required });
    }
    let cp = format!("{cause}-");
    let ep = format!("{effect}-");
    let specs = [
        LagSpec { name: cp.clone(), variable: cause.into(), lag: 1, len: cfg.cause },
        LagSpec { name: ep.clone(), variable: effect.into(), lag: 1, len: cfg.history },
        LagSpec { name: effect.into(), variable: effect.into(), lag: 0, len: 1 },
    ];
    let (joint, windows) = lagged_joint(series, &specs)?;
    Ok(Embedding {
        joint,
        cause_past: VarSet::single(cp),
        effect_past: VarSet::single(ep),
        effect: VarSet::single(effect),
        windows,
    })
}

/// Sub-channel matrices `A^j_{gi}` indexed by history symbol `g`, plus the
/// history weights `p(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplexTensor {
    histories: Domain,
    subchannels: Vec<CausalTensor>,
    weights: Pmf,
}

impl MultiplexTensor {
    pub fn new(histories: Domain, subchannels: Vec<CausalTensor>, weights: Pmf) -> Result<Self> {
        if subchannels.len() != histories.len() || subchannels.is_empty() {
            return Err(Error::Shape(format!(
                "{} sub-channels for {} histories",
                subchannels.len(),
                histories.len()
            )));
        }
        if !weights.domain().same_shape(&histories) {
            return Err(Error::Shape("weights must be a pmf over the histories".into()));
        }
        let first = &subchannels[0];
        for s in &subchannels[1..] {
            if !s.source().same_shape(first.source())
                || !s.destination().same_shape(first.destination())
            {
                return Err(Error::Shape("sub-channels differ in shape".into()));
            }
        }
        Ok(MultiplexTensor { histories, subchannels, weights })
    }

    pub fn histories(&self) -> &Domain {
        &self.histories
    }

    pub fn subchannels(&self) -> &[CausalTensor] {
        &self.subchannels
    }

    pub fn subchannel(&self, g: usize) -> &CausalTensor {
        &self.subchannels[g]
    }

    pub fn weights(&self) -> &Pmf {
        &self.weights
    }

    pub fn source(&self) -> &Domain {
        self.subchannels[0].source()
    }

    pub fn destination(&self) -> &Domain {
        self.subchannels[0].destination()
    }

    /// Histories with positive weight.
    pub fn supported(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.histories.len()).filter(|&g| !self.weights.prob(g).is_zero())
    }
}

/// `A^j_{gi} = p(y = j | x⁻ = i, y⁻ = g)` and `p(g)` from an embedding.
pub fn te_tensor(emb: &Embedding) -> Result<MultiplexTensor> {
    let hist_then_cause = emb.effect_past.union(&emb.cause_past);
    let full = CausalTensor::from_joint(&emb.joint, &hist_then_cause, &emb.effect)?;
    let histories = emb.joint.domain_of(&emb.effect_past)?;
    let source = emb.joint.domain_of(&emb.cause_past)?;
    let destination = emb.joint.domain_of(&emb.effect)?;
    let (ni, nj) = (source.len(), destination.len());
    let mut subchannels = Vec::with_capacity(histories.len());
    for g in 0..histories.len() {
        let rows = g * ni..(g + 1) * ni;
        let entries: Vec<Prob> = rows.clone().flat_map(|r| full.row(r).to_vec()).collect();
        let support: Vec<bool> = rows.map(|r| full.is_supported(r)).collect();
        debug_assert_eq!(entries.len(), ni * nj);
        subchannels.push(CausalTensor::new(source.clone(), destination.clone(), entries, support)?);
    }
    let weights = emb.joint.pmf(&emb.effect_past)?;
    MultiplexTensor::new(histories, subchannels, weights)
}

/// `Σ p^{ijg} log2(A^j_{gi} / p^j_g)` in bits.
pub fn transfer_entropy(mux: &MultiplexTensor, emb: &Embedding) -> Result<f64> {
    let hist_then_cause = emb.effect_past.union(&emb.cause_past);
    let (_, _, p_gij) = emb.joint.table(&hist_then_cause, &emb.effect)?;
    let p_j_given_g = CausalTensor::from_joint(&emb.joint, &emb.effect_past, &emb.effect)?;
    let ni = mux.source().len();
    let nj = mux.destination().len();
    if p_gij.len() != mux.histories().len() * ni * nj {
        return Err(Error::Shape("multiplex tensor does not match the embedding".into()));
    }
    let mut sum = 0.0;
    for g in mux.supported() {
        let a = mux.subchannel(g);
        for i in 0..ni {
            for j in 0..nj {
                let p = &p_gij[(g * ni + i) * nj + j];
                if p.is_zero() {
                    continue;
                }
                // p log2(A / p(j|g)) written as p log2(p / q)
                let q = &(p * p_j_given_g.entry(g, j)) / a.entry(i, j);
                sum += plogr(p, &q);
            }
        }
    }
    Ok(clamp_nonnegative(sum))
}

/// Row-stochastic conditioning weights `p(g | h, i)` from the joined domain
/// `(h, i)` to the history domain `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubchannelWeights {
    tensor: CausalTensor,
}

impl SubchannelWeights {
    /// `source` is the joined `(h, i)` domain and `histories` the `g` domain.
    pub fn new(
        source: Domain,
        histories: Domain,
        entries: Vec<Prob>,
        support: Vec<bool>,
    ) -> Result<Self> {
        CausalTensor::new(source, histories, entries, support)
            .map(|tensor| SubchannelWeights { tensor })
            .map_err(|e| Error::Weight(e.to_string()))
    }

    pub fn tensor(&self) -> &CausalTensor {
        &self.tensor
    }
}

/// Empirical `p(g | h, i)` from a joint containing all three variables.
pub fn estimate_subchannel_weights(
    joint: &JointDistribution,
    h: &VarSet,
    i: &VarSet,
    g: &VarSet,
) -> Result<SubchannelWeights> {
    Ok(SubchannelWeights { tensor: CausalTensor::from_joint(joint, &h.union(i), g)? })
}

/// `Ā^j_{hi} = Σ_g p(g | h, i) A^j_{gi}`, returned as a tensor from the joined
/// `(h, i)` domain.
pub fn collapse_subchannels(
    mux: &MultiplexTensor,
    weights: &SubchannelWeights,
) -> Result<CausalTensor> {
    let w = weights.tensor();
    if !w.destination().same_shape(mux.histories()) {
        return Err(Error::Weight("weights must range over the sub-channel histories".into()));
    }
    let ni = mux.source().len();
    let nj = mux.destination().len();
    let src_alphabets = mux.source().alphabets();
    let w_alphabets = w.source().alphabets();
    if !w.rows().is_multiple_of(ni)
        || w_alphabets.len() < src_alphabets.len()
        || &w_alphabets[w_alphabets.len() - src_alphabets.len()..] != src_alphabets
    {
        return Err(Error::Weight("weights must be indexed by (h, i) with i last".into()));
    }
    let mut entries = Vec::with_capacity(w.rows() * nj);
    let mut support = Vec::with_capacity(w.rows());
    for row in 0..w.rows() {
        let i = row % ni;
        let mut out = vec![Prob::zero(); nj];
        let mut ok = w.is_supported(row);
        if ok {
            for (g, wg) in w.row(row).iter().enumerate() {
                if wg.is_zero() {
                    continue;
                }
                let a = mux.subchannel(g);
                if !a.is_supported(i) {
                    ok = false;
                    break;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    *o = &*o + &(wg * a.entry(i, j));
                }
            }
        }
        if !ok {
            out = vec![Prob::zero(); nj];
        }
        support.push(ok);
        entries.extend(out);
    }
    CausalTensor::new(w.source().clone(), mux.destination().clone(), entries, support)
}

/// Per-history cascade `T^k_{hi} = Σ_j Ā^j_{hi} B^k_{hj}`.
pub fn mux_compose(first: &CausalTensor, second: &MultiplexTensor) -> Result<MultiplexTensor> {
    let nh = second.histories().len();
    if !first.rows().is_multiple_of(nh) {
        return Err(Error::Shape(format!(
            "first stage has {} rows, not a multiple of {nh} histories",
            first.rows()
        )));
    }
    let ni = first.rows() / nh;
    let alphabets = first.source().alphabets();
    let names = first.source().names();
    let h_vars = second.histories().alphabets().len();
    if alphabets.len() <= h_vars || &alphabets[..h_vars] != second.histories().alphabets() {
        return Err(Error::Shape("first stage must be indexed by (h, i) with h first".into()));
    }
    let i_domain = Domain::new(names[h_vars..].to_vec(), alphabets[h_vars..].to_vec())?;
    debug_assert_eq!(i_domain.len(), ni);
    let mut subchannels = Vec::with_capacity(nh);
    for h in 0..nh {
        let rows = h * ni..(h + 1) * ni;
        let entries: Vec<Prob> = rows.clone().flat_map(|r| first.row(r).to_vec()).collect();
        let support: Vec<bool> = rows.map(|r| first.is_supported(r)).collect();
        let stage = CausalTensor::new(i_domain.clone(), first.destination().clone(), entries, support)?;
        subchannels.push(stage.compose(second.subchannel(h))?);
    }
    MultiplexTensor::new(second.histories().clone(), subchannels, second.weights().clone())
}
