//! Coefficientwise comparison results.

use alloc::string::String;
use alloc::vec::Vec;

use crate::scalar::Rational;
use crate::series::{Series1, Series2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub m: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Cell {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of one identity on a grid of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub name: String,
    /// Highest total degree compared.
    pub order: usize,
    /// In graded order: by total degree, then by decreasing `n`.
    pub cells: Vec<Cell>,
}

impl CoefficientCheck {
    pub fn new(name: impl Into<String>, order: usize, cells: Vec<Cell>) -> Self {
        CoefficientCheck {
            name: name.into(),
            order,
            cells,
        }
    }

    /// Compare two bivariate series on every cell of total degree at most
    /// `order` accepted by `include`.
    ///
    /// Panics if either series is known to less than `order`.
    pub fn from_series(
        name: impl Into<String>,
        order: usize,
        lhs: &Series2,
        rhs: &Series2,
        mut include: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        assert!(
            lhs.order() >= order && rhs.order() >= order,
            "series known to orders {} and {}, comparison needs {order}",
            lhs.order(),
            rhs.order()
        );
        let mut cells = Vec::new();
        for d in 0..=order {
            for n in (0..=d).rev() {
                let m = d - n;
                if include(n, m) {
                    cells.push(Cell {
                        n,
                        m,
                        lhs: lhs.coeff(n, m).cloned().unwrap_or_default(),
                        rhs: rhs.coeff(n, m).cloned().unwrap_or_default(),
                    });
                }
            }
        }
        CoefficientCheck::new(name, order, cells)
    }

    /// One-variable comparison, stored with `m = 0`.
    pub fn from_series1(
        name: impl Into<String>,
        order: usize,
        lhs: &Series1,
        rhs: &Series1,
    ) -> Self {
        assert!(lhs.order() >= order && rhs.order() >= order);
        let cells = (0..=order)
            .map(|n| Cell {
                n,
                m: 0,
                lhs: lhs.coeffs()[n].clone(),
                rhs: rhs.coeffs()[n].clone(),
            })
            .collect();
        CoefficientCheck::new(name, order, cells)
    }

    pub fn first_mismatch(&self) -> Option<&Cell> {
        self.cells.iter().find(|c| !c.agrees())
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch().is_none()
    }
}
