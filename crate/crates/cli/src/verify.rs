//! Verification suites over seeded random tables.

use bifree_core::bicum::{bi_moment_sides, BiFreeFamily, RightOrder};
use bifree_core::multfn::{convolve, pinched_convolve};
use bifree_core::oracle::{check_lemma, check_mirror, Lemma};
use bifree_core::random::{Normalization, Sampler};
use bifree_core::report::{Cell, CoefficientCheck};
use bifree_core::series::Series1;
use bifree_core::transforms::{MultiplicativityCheck, Theorem};
use bifree_core::Limits;
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    TMult,
    SMult(RightOrder),
    Lemmas,
    Identities,
}

impl Suite {
    pub fn default_order(self) -> usize {
        match self {
            Suite::TMult => 6,
            Suite::SMult(_) | Suite::Lemmas => 5,
            Suite::Identities => 8,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub n: usize,
    pub m: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    pub theorem: String,
    pub order: usize,
    pub table: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<(usize, usize)>,
    pub status: &'static str,
    pub witness: Option<Witness>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "ok"
    }

    fn from_checks<'a>(
        theorem: impl Into<String>,
        order: usize,
        table: usize,
        checks: impl IntoIterator<Item = &'a CoefficientCheck>,
    ) -> Report {
        let witness = checks
            .into_iter()
            .find_map(|c| c.first_mismatch().map(|cell| witness(&c.name, cell)));
        Report {
            theorem: theorem.into(),
            order,
            table,
            cell: None,
            status: if witness.is_none() { "ok" } else { "mismatch" },
            witness,
        }
    }

    pub fn text(&self) -> String {
        let cell = self
            .cell
            .map(|(n, m)| format!(" z^{n} w^{m}"))
            .unwrap_or_default();
        let mut line = format!(
            "table {} {}{} to order {}: {}",
            self.table, self.theorem, cell, self.order, self.status
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!(
                " ({} at z^{} w^{}: {} vs {})",
                w.check, w.n, w.m, w.lhs, w.rhs
            ));
        }
        line
    }
}

fn witness(check: &str, cell: &Cell) -> Witness {
    Witness {
        check: check.to_string(),
        n: cell.n,
        m: cell.m,
        lhs: cell.lhs.to_string(),
        rhs: cell.rhs.to_string(),
    }
}

fn map_tables<T: Send, R: Send>(
    items: Vec<T>,
    parallel: bool,
    f: impl Fn(usize, T) -> Result<Vec<R>, CliError> + Sync + Send,
) -> Result<Vec<R>, CliError> {
    let results: Vec<Result<Vec<R>, CliError>> = if parallel {
        items
            .into_par_iter()
            .enumerate()
            .map(|(i, t)| f(i + 1, t))
            .collect()
    } else {
        items
            .into_iter()
            .enumerate()
            .map(|(i, t)| f(i + 1, t))
            .collect()
    };
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs `suite` on `tables` random inputs drawn from one seeded stream, so
/// the result does not depend on `parallel`.
pub fn run(
    suite: Suite,
    order: usize,
    seed: u64,
    tables: usize,
    parallel: bool,
    limits: &Limits,
) -> Result<Vec<Report>, CliError> {
    if order == 0 {
        return Err(CliError::Input("--order must be at least 1".into()));
    }
    let mut sampler = Sampler::new(seed);
    match suite {
        Suite::TMult | Suite::SMult(_) => {
            let (theorem, norm) = match suite {
                Suite::TMult => (Theorem::T, Normalization::RightMean),
                Suite::SMult(r) => (Theorem::S(r), Normalization::BothMeans),
                _ => unreachable!(),
            };
            let check = MultiplicativityCheck::new(theorem, order, limits)?;
            let fams: Vec<BiFreeFamily> = (0..tables)
                .map(|_| sampler.family(theorem.trunc_for(order), norm))
                .collect();
            map_tables(fams, parallel, |table, fam| {
                let report = check.run(&fam, limits)?;
                Ok(vec![Report::from_checks(
                    theorem.name(),
                    order,
                    table,
                    &report.checks,
                )])
            })
        }
        Suite::Lemmas => {
            let fams: Vec<BiFreeFamily> = (0..tables)
                .map(|_| sampler.family(order + 2, Normalization::BothMeans))
                .collect();
            map_tables(fams, parallel, |table, fam| {
                let mut out = Vec::new();
                for lemma in Lemma::ALL {
                    let check = check_lemma(lemma, &fam, order, limits)?;
                    for cell in &check.cells {
                        let w = (!cell.agrees()).then(|| witness(&check.name, cell));
                        out.push(Report {
                            theorem: lemma.name().to_string(),
                            order,
                            table,
                            cell: Some((cell.n, cell.m)),
                            status: if w.is_none() { "ok" } else { "mismatch" },
                            witness: w,
                        });
                    }
                }
                let mirror = check_mirror(&fam, order, limits)?;
                out.push(Report::from_checks("S4 mirror", order, table, [&mirror]));
                Ok(out)
            })
        }
        Suite::Identities => {
            let inputs: Vec<_> = (0..tables)
                .map(|_| {
                    let f = sampler.mult_fn_m1(order);
                    let g = sampler.mult_fn_m1(order);
                    (f, g, sampler.pair(order, Normalization::None))
                })
                .collect();
            map_tables(inputs, parallel, |table, (f, g, d)| {
                let fg = convolve(&f, &g, limits)?.phi_series();
                let pinched = pinched_convolve(&f, &g, limits)?.phi_series();
                let composition = CoefficientCheck::from_series1(
                    "f(pinched(f, g)) = f * g",
                    order,
                    &Series1::compose(&f.phi_series(), &pinched)?,
                    &fg,
                );
                let product = &f.phi_series().comp_inverse()? * &g.phi_series().comp_inverse()?;
                let inverse = CoefficientCheck::from_series1(
                    "z (f * g)^<-1> = f^<-1> g^<-1>",
                    order,
                    &(&Series1::var(order) * &fg.comp_inverse()?),
                    &product,
                );
                let (lhs, rhs) = bi_moment_sides(&d, limits)?;
                let moments =
                    CoefficientCheck::from_series("bi-moment", order, &lhs, &rhs, |_, _| true);
                Ok([composition, inverse, moments]
                    .iter()
                    .map(|c| Report::from_checks(c.name.clone(), order, table, [c]))
                    .collect())
            })
        }
    }
}
