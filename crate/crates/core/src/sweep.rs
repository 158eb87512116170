//! Batch symmetry reports over quandle × knot grids.

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::NamedBraid;
use crate::format::{NamedQuandle, ReportLine};
use crate::psi::{symmetry_report_for, PsiError, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("base point {} is out of range for quandle {quandle}", .base + 1)]
    BadBase { quandle: String, base: usize },
    #[error("quandle {quandle}, knot {knot}: {source}")]
    Pair { quandle: String, knot: String, source: PsiError },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone)]
pub struct SweepJob {
    pub quandles: Vec<NamedQuandle>,
    pub knots: Vec<NamedBraid>,
    /// 0-based base point used for every quandle.
    pub base: usize,
    pub symmetries: Vec<Symmetry>,
    pub workers: usize,
    /// Quandles whose inner automorphism group is larger are skipped.
    pub max_inn_order: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    /// Quandle-major, each in input order.
    pub lines: Vec<ReportLine>,
    pub skipped: Vec<String>,
}

pub fn run_sweep(job: &SweepJob) -> Result<SweepOutcome, SweepError> {
    if job.workers == 0 {
        return Err(SweepError::NoWorkers);
    }
    let mut skipped = Vec::new();
    let mut kept = Vec::new();
    for q in &job.quandles {
        if job.base >= q.quandle.order() {
            return Err(SweepError::BadBase { quandle: q.name.clone(), base: job.base });
        }
        match job.max_inn_order {
            Some(bound) if q.quandle.inner_group().order() > bound => skipped.push(q.name.clone()),
            _ => kept.push(q),
        }
    }
    let pairs: Vec<(&NamedQuandle, &NamedBraid)> =
        kept.iter().flat_map(|&q| job.knots.iter().map(move |k| (q, k))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let lines = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(q, k)| {
                let r = symmetry_report_for(&q.quandle, job.base, &k.braid, &job.symmetries).map_err(|source| {
                    SweepError::Pair { quandle: q.name.clone(), knot: k.name.clone(), source }
                })?;
                Ok(ReportLine {
                    knot: k.name.clone(),
                    quandle: q.name.clone(),
                    psi: r.psi.counts,
                    psi_m: r.psi_m.counts,
                    psi_r: r.psi_r.counts,
                    psi_rm: r.psi_rm.counts,
                    distinguished: r.distinguished,
                })
            })
            .collect::<Result<Vec<_>, SweepError>>()
    })?;
    Ok(SweepOutcome { lines, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::quandle::Quandle;

    fn job(workers: usize) -> SweepJob {
        SweepJob {
            quandles: vec![
                NamedQuandle { name: "r3".into(), quandle: Quandle::dihedral(3), origin: None },
                NamedQuandle { name: "r5".into(), quandle: Quandle::dihedral(5), origin: None },
            ],
            knots: vec![
                parse_braid("knot 3_1 2 3 1 1 1").unwrap(),
                parse_braid("knot 4_1 3 4 1 -2 1 -2").unwrap(),
            ],
            base: 0,
            symmetries: Symmetry::ALL.to_vec(),
            workers,
            max_inn_order: None,
        }
    }

    #[test]
    fn order_is_quandle_major() {
        let out = run_sweep(&job(2)).unwrap();
        let keys: Vec<(String, String)> = out.lines.iter().map(|l| (l.quandle.clone(), l.knot.clone())).collect();
        assert_eq!(keys[0], ("r3".into(), "3_1".into()));
        assert_eq!(keys[1], ("r3".into(), "4_1".into()));
        assert_eq!(keys[3], ("r5".into(), "4_1".into()));
        assert_eq!(out.lines[0].psi, vec![3]);
    }

    #[test]
    fn inn_bound_skips_and_zero_workers_fail() {
        let mut j = job(1);
        j.max_inn_order = Some(6);
        let out = run_sweep(&j).unwrap();
        assert_eq!(out.skipped, vec!["r5".to_string()]);
        assert_eq!(out.lines.len(), 2);
        assert_eq!(run_sweep(&job(0)), Err(SweepError::NoWorkers));
    }
}
