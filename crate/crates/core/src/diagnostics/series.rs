//! Level and shell spectra of a [`PhaseState`] and their CSV form.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::hermite::{level_len, level_offset};
use crate::solver::{PhaseState, SolverError};

/// `S_n = sqrt(Σ_{|α|=n, η} ⟨η⟩^{2r}|c|²)` for `n = 0..=N`.
pub fn hermite_level_spectrum(state: &PhaseState) -> Vec<f64> {
    let w = state.lattice().japanese();
    let mut acc = vec![0.0; state.cap() + 1];
    for m in 0..state.modes() {
        let wm = w[m].powf(2.0 * state.r());
        let slice = state.slice(m);
        for (n, a) in acc.iter_mut().enumerate() {
            let off = level_offset(n);
            *a += wm * slice[off..off + level_len(n)].iter().map(|c| c.norm_sqr()).sum::<f64>();
        }
    }
    acc.into_iter().map(f64::sqrt).collect()
}

/// Number of Fourier shells, `⌊K√d⌋ + 1`.
pub fn shell_count(state: &PhaseState) -> usize {
    let lat = state.lattice();
    (lat.k as f64 * (lat.d_x as f64).sqrt()).floor() as usize + 1
}

/// `R_m = sqrt(Σ_{round|η|=m, α} |c|²)` for `m = 0..=⌊K√d⌋`.
pub fn fourier_spectrum(state: &PhaseState) -> Vec<f64> {
    let radius = state.lattice().radius();
    let mut acc = vec![0.0; shell_count(state)];
    for (m, rad) in radius.iter().enumerate() {
        let shell = (rad.round() as usize).min(acc.len() - 1);
        acc[shell] += state.slice(m).iter().map(|c| c.norm_sqr()).sum::<f64>();
    }
    acc.into_iter().map(f64::sqrt).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Hermite,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub t: f64,
    pub kind: SpectrumKind,
    pub index: usize,
    pub value: f64,
}

/// Spectra recorded at a sequence of times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsSeries {
    pub times: Vec<f64>,
    pub hermite: Vec<Vec<f64>>,
    pub fourier: Vec<Vec<f64>>,
}

impl DiagnosticsSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, state: &PhaseState) {
        self.times.push(state.time());
        self.hermite.push(hermite_level_spectrum(state));
        self.fourier.push(fourier_spectrum(state));
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        let mut out = Vec::new();
        for (i, &t) in self.times.iter().enumerate() {
            for (kind, values) in [(SpectrumKind::Hermite, &self.hermite[i]), (SpectrumKind::Fourier, &self.fourier[i])] {
                out.extend(values.iter().enumerate().map(|(index, &value)| SpectrumRow { t, kind, index, value }));
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), SolverError> {
        let mut out = csv::Writer::from_writer(w);
        for row in self.rows() {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Rebuild a series from spectra CSV; times keep their order of first
    /// appearance.
    pub fn read_csv<R: Read>(r: R) -> Result<Self, SolverError> {
        let mut reader = csv::Reader::from_reader(r);
        let mut order: Vec<u64> = Vec::new();
        let mut by_time: BTreeMap<u64, (BTreeMap<usize, f64>, BTreeMap<usize, f64>)> = BTreeMap::new();
        for row in reader.deserialize() {
            let row: SpectrumRow = row?;
            let key = row.t.to_bits();
            let entry = by_time.entry(key).or_insert_with(|| {
                order.push(key);
                Default::default()
            });
            match row.kind {
                SpectrumKind::Hermite => entry.0.insert(row.index, row.value),
                SpectrumKind::Fourier => entry.1.insert(row.index, row.value),
            };
        }
        let mut series = Self::new();
        for key in order {
            let (h, f) = &by_time[&key];
            series.times.push(f64::from_bits(key));
            series.hermite.push(dense(h));
            series.fourier.push(dense(f));
        }
        Ok(series)
    }
}

fn dense(m: &BTreeMap<usize, f64>) -> Vec<f64> {
    let len = m.keys().next_back().map_or(0, |k| k + 1);
    (0..len).map(|i| m.get(&i).copied().unwrap_or(0.0)).collect()
}
