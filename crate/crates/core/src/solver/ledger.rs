//! Energy ledger: `‖g‖_{H^r_x(L²_v)}`, `|||g|||_{r,0}` and the cumulative
//! dissipation `∫₀ᵗ |||g|||² ds` along a run.

use std::io::Write;

use serde::Serialize;

use super::state::PhaseState;
use super::SolverError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerRow {
    pub t: f64,
    pub h_r_norm: f64,
    pub triple_norm: f64,
    pub dissipation_integral: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EnergyLedger {
    rows: Vec<LedgerRow>,
}

impl EnergyLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append the state at the next time; the dissipation integral advances
    /// by the trapezoid rule.
    pub fn record(&mut self, state: &PhaseState) {
        let triple = state.triple_norm();
        let dissipation = match self.rows.last() {
            None => 0.0,
            Some(prev) => {
                assert!(state.time() > prev.t, "ledger times must increase");
                prev.dissipation_integral
                    + 0.5 * (state.time() - prev.t) * (prev.triple_norm.powi(2) + triple.powi(2))
            }
        };
        self.rows.push(LedgerRow {
            t: state.time(),
            h_r_norm: state.h_r_norm(),
            triple_norm: triple,
            dissipation_integral: dissipation,
        });
    }

    pub fn rows(&self) -> &[LedgerRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn initial_norm(&self) -> f64 {
        self.rows.first().map_or(0.0, |r| r.h_r_norm)
    }

    pub fn sup_norm(&self) -> f64 {
        self.rows.iter().map(|r| r.h_r_norm).fold(0.0, f64::max)
    }

    /// `(sup_t ‖g‖² + ½∫|||g|||²) / ‖g₀‖²`, or `None` for zero data.
    pub fn energy_constant(&self) -> Option<f64> {
        let g0 = self.initial_norm();
        let last = self.rows.last()?;
        (g0 > 0.0).then(|| (self.sup_norm().powi(2) + 0.5 * last.dissipation_integral) / (g0 * g0))
    }

    pub fn all_finite(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.t.is_finite() && r.h_r_norm.is_finite() && r.triple_norm.is_finite() && r.dissipation_integral.is_finite())
    }

    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].t > w[0].t)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), SolverError> {
        let mut out = csv::Writer::from_writer(w);
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }
}
