//! Default grids. These are versioned: any change to a grid bumps
//! [`GRID_VERSION`], which every report echoes.

use super::{CheckId, GridPoint};

pub const GRID_VERSION: u32 = 1;

/// Upper bounds for the `k`-indexed default grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefaultBounds {
    /// `k = 1..=fit_k_max` for `C2.*`, `NSZ` and `A005148`.
    pub fit_k_max: u32,
    /// `k = 1..=cor1_k_max` for `COR1`.
    pub cor1_k_max: u32,
}

impl Default for DefaultBounds {
    fn default() -> Self {
        Self {
            fit_k_max: 12,
            cor1_k_max: 24,
        }
    }
}

fn product(ks: &[u32], ms: &[u32]) -> Vec<GridPoint> {
    ks.iter()
        .flat_map(|&k| ms.iter().map(move |&m| GridPoint::km(k, m)))
        .collect()
}

pub fn default_grid(id: CheckId, bounds: &DefaultBounds) -> Vec<GridPoint> {
    match id {
        CheckId::C2_1 | CheckId::C2_2 | CheckId::C2_3 | CheckId::C2_4 | CheckId::Nsz | CheckId::A005148 => {
            (1..=bounds.fit_k_max).map(GridPoint::k).collect()
        }
        CheckId::C3 => {
            let mut grid = Vec::new();
            for p in [2, 3] {
                for a in [3, 4] {
                    for k in [1, 2, 3] {
                        grid.push(GridPoint::prime_power(k, p, a));
                    }
                }
            }
            grid
        }
        CheckId::C4 => (2..=5).map(|a| GridPoint::prime_power(2, 2, a)).collect(),
        CheckId::C5 => [(3, 1), (3, 2), (5, 1), (7, 1)]
            .into_iter()
            .map(|(p, a)| GridPoint::prime_power(p as u32, p, a))
            .collect(),
        CheckId::C6 => product(&[1, 2, 4, 8], &[4, 8, 16, 32]),
        CheckId::C7 => product(&[1, 2, 4], &[6, 10, 14]),
        CheckId::C8 | CheckId::C8Value => product(&[3, 5, 6, 9], &[4, 8, 12]),
        CheckId::C9 => product(&[3, 5, 6], &[6, 10]),
        CheckId::C10 => product(&[1, 2, 3, 4, 6], &[3, 6, 9, 12, 27]),
        CheckId::C11_1 => [3u32, 5, 7].into_iter().map(|p| GridPoint::km(p, p).with_p(p.into())).collect(),
        CheckId::C11_2 => {
            let mut grid = Vec::new();
            for p in [3u32, 5, 7] {
                for n in [2, 3] {
                    grid.push(GridPoint::km(p, p.pow(n)).with_p(p.into()).with_n(n));
                }
            }
            grid
        }
        CheckId::C11_3 => [7u32, 11, 13]
            .into_iter()
            .map(|p| GridPoint::km(p, p * p).with_p(p.into()).with_n(2))
            .collect(),
        CheckId::Cor1 => (1..=bounds.cor1_k_max)
            .flat_map(|k| [2, 3].map(|p| GridPoint::km(k, 3).with_p(p)))
            .collect(),
        CheckId::Scale => {
            let mut grid: Vec<_> = [3u32, 5, 7].into_iter().map(|p| GridPoint::km(p, p).with_p(p.into())).collect();
            grid.push(GridPoint::km(1, 3).with_p(2));
            grid.push(GridPoint::km(1, 5).with_p(5));
            grid
        }
    }
}
