//! Dimension and multiplicity grids.

use std::str::FromStr;

use serde::Serialize;

use crate::branch::{branch_oracle, BranchError, CaseTag};
use crate::chars::dim_weyl;
use crate::rootsys::{system, DominantWeight, Label};

/// Which grid to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `A2` dimensions for `0 <= alpha, beta <= 6`.
    A2Dimensions,
    /// `G2` dimensions for `0 <= k, l <= 3`.
    G2Dimensions,
    /// `G2 -> A2` multiplicities of `Pi_{3,2}` for `0 <= alpha, beta <= 6`.
    HexagonMultiplicities,
}

impl FromStr for Figure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1a" => Ok(Figure::A2Dimensions),
            "fig1b" => Ok(Figure::G2Dimensions),
            "fig2a" => Ok(Figure::HexagonMultiplicities),
            _ => Err(format!(
                "unknown table `{s}` (expected fig1a, fig1b or fig2a)"
            )),
        }
    }
}

/// A rectangular grid; `values[y][x]` with `y` the vertical axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub name: String,
    pub x: String,
    pub y: String,
    pub values: Vec<Vec<u128>>,
}

fn dims(label: Label, n: u32) -> Result<Vec<Vec<u128>>, BranchError> {
    let rs = system(label)?;
    (0..=n)
        .map(|y| {
            (0..=n)
                .map(|x| Ok(dim_weyl(&rs, &DominantWeight::new(label, &[x, y])?)?))
                .collect()
        })
        .collect()
}

pub fn build_grid(fig: Figure) -> Result<Grid, BranchError> {
    Ok(match fig {
        Figure::A2Dimensions => Grid {
            name: "fig1a".into(),
            x: "alpha".into(),
            y: "beta".into(),
            values: dims(Label::A(2), 6)?,
        },
        Figure::G2Dimensions => Grid {
            name: "fig1b".into(),
            x: "k".into(),
            y: "l".into(),
            values: dims(Label::G2, 3)?,
        },
        Figure::HexagonMultiplicities => {
            let res = branch_oracle(CaseTag::IV, &DominantWeight::new(Label::G2, &[3, 2])?)?;
            let mut values = vec![vec![0u128; 7]; 7];
            for (nu, &m) in &res.summands {
                let (a, b) = (nu.coeffs[0] as usize, nu.coeffs[1] as usize);
                if a < 7 && b < 7 {
                    values[b][a] = m as u128;
                }
            }
            Grid {
                name: "fig2a".into(),
                x: "alpha".into(),
                y: "beta".into(),
                values,
            }
        }
    })
}
