//! Parametrized ideal families with known stability behaviour.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::Ring;

fn ring(names: &str) -> Ring {
    Ring::new(&names.split(',').collect::<Vec<_>>()).expect("fixed variable names")
}

fn build(names: &str, gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(&ring(names), gens).expect("family generators fit the ring")
}

fn need(c: u64, min: u64, what: &str) -> Result<()> {
    if c < min {
        Err(Error::usage(format!("{what} needs a parameter of at least {min}")))
    } else {
        Ok(())
    }
}

/// `((xy)^2, (xz)^2, (yz)^2)` in `x,y,z`.
pub fn squared_pairs() -> MonomialIdeal {
    build("x,y,z", &[&[2, 2, 0], &[2, 0, 2], &[0, 2, 2]])
}

/// `(x^{2c+2}, x y^{2c} z, y^{2c+2} z)` in `x,y,z`, `c >= 1`.
pub fn closure_gap(c: u64) -> Result<MonomialIdeal> {
    need(c, 1, "closure_gap")?;
    Ok(build(
        "x,y,z",
        &[&[2 * c + 2, 0, 0], &[1, 2 * c, 1], &[0, 2 * c + 2, 1]],
    ))
}

/// `(xy, yz, zu)` in `x,y,z,u`.
pub fn path() -> MonomialIdeal {
    build("x,y,z,u", &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]])
}

/// `(x^2 z, u y z, u^3)` in `x,y,z,u`.
pub fn mixed() -> MonomialIdeal {
    build("x,y,z,u", &[&[2, 0, 1, 0], &[0, 1, 1, 1], &[0, 0, 0, 3]])
}

/// `(x^{c+1} z^c, u^{2c-1} y z, u^{2c+1})` in `x,y,z,u`, `c >= 1`.
pub fn ass_lag(c: u64) -> Result<MonomialIdeal> {
    need(c, 1, "ass_lag")?;
    Ok(build(
        "x,y,z,u",
        &[&[c + 1, 0, c, 0], &[0, 1, 1, 2 * c - 1], &[0, 0, 0, 2 * c + 1]],
    ))
}

/// `(x^c y^{c-1}, x^{c-1} y^{c-1} z, z^c u^c)` in `x,y,z,u`, `c >= 2`.
pub fn depth_lag(c: u64) -> Result<MonomialIdeal> {
    need(c, 2, "depth_lag")?;
    Ok(build(
        "x,y,z,u",
        &[&[c, c - 1, 0, 0], &[c - 1, c - 1, 1, 0], &[0, 0, c, c]],
    ))
}

/// `(x^t, x y^{t-2} z, y^{t-1} z)` in `x,y,z`, `t >= 3`.
pub fn depth_index(t: u64) -> Result<MonomialIdeal> {
    need(t, 3, "depth_index")?;
    Ok(build("x,y,z", &[&[t, 0, 0], &[1, t - 2, 1], &[0, t - 1, 1]]))
}

/// Looks a family up by name; `param` is ignored for fixed ideals.
pub fn by_name(name: &str, param: u64) -> Result<MonomialIdeal> {
    match name {
        "squared_pairs" => Ok(squared_pairs()),
        "closure_gap" => closure_gap(param),
        "path" => Ok(path()),
        "mixed" => Ok(mixed()),
        "ass_lag" => ass_lag(param),
        "depth_lag" => depth_lag(param),
        "depth_index" => depth_index(param),
        _ => Err(Error::usage(format!("unknown family `{name}`"))),
    }
}

pub const NAMES: &[&str] = &[
    "squared_pairs",
    "closure_gap",
    "path",
    "mixed",
    "ass_lag",
    "depth_lag",
    "depth_index",
];
