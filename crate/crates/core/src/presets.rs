//! Published parameter sets, named `<image>-l<looks>`.
//!
//! Every preset keeps the shared defaults `tau = 0.2`, `h = 1`, `xi = 1`.

use crate::solver::ModelParams;
use crate::tdm::TdmParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub looks: u32,
    pub proposed: ModelParams,
    pub tdm: TdmParams,
}

// (name, looks, TDM gamma, TDM nu, TDM K, gamma, alpha, beta, iota, nu)
type Row = (&'static str, u32, f64, f64, f64, f64, f64, f64, f64, f64);

const TABLE: [Row; 9] = [
    ("circle-l1", 1, 10.0, 1.0, 1.0, 1.0, 1.5, 1.8, 2.5, 0.1),
    ("circle-l3", 3, 10.0, 1.0, 1.0, 2.0, 1.7, 2.0, 2.5, 0.1),
    ("circle-l5", 5, 5.0, 1.0, 1.0, 2.0, 1.7, 2.2, 2.0, 0.1),
    ("texture-l1", 1, 2.0, 1.5, 2.0, 1.0, 2.0, 1.0, 3.0, 0.1),
    ("texture-l3", 3, 2.0, 1.5, 2.0, 2.0, 2.0, 1.0, 3.0, 0.1),
    ("texture-l5", 5, 2.0, 1.5, 2.0, 5.0, 2.5, 1.0, 3.0, 0.1),
    ("peppers-l1", 1, 1.0, 1.5, 2.0, 1.0, 2.0, 1.0, 3.0, 0.1),
    ("peppers-l3", 3, 1.0, 1.5, 2.0, 2.0, 2.0, 1.0, 3.0, 0.1),
    ("peppers-l5", 5, 2.0, 1.5, 2.0, 2.0, 2.5, 1.0, 3.0, 0.1),
];

fn build(row: &Row) -> Preset {
    let &(name, looks, t_gamma, t_nu, t_k, gamma, alpha, beta, iota, nu) = row;
    Preset {
        name,
        looks,
        proposed: ModelParams {
            gamma,
            alpha,
            beta,
            iota,
            nu,
            ..ModelParams::default()
        },
        tdm: TdmParams {
            gamma: t_gamma,
            nu_exp: t_nu,
            k_thresh: t_k,
            ..TdmParams::default()
        },
    }
}

pub fn all() -> Vec<Preset> {
    TABLE.iter().map(build).collect()
}

pub fn names() -> Vec<&'static str> {
    TABLE.iter().map(|r| r.0).collect()
}

pub fn lookup(name: &str) -> Option<Preset> {
    TABLE.iter().find(|r| r.0.eq_ignore_ascii_case(name)).map(build)
}
