//! Driver layer behind the `apery` binary: variety names, result records,
//! the operator cache and the table reproduction harness.

mod cache;
mod record;
mod reproduce;
mod spec;

pub use cache::{cache_roundtrip, write_atomic, CacheStatus, OperatorCache, CACHE_ENV};
pub use record::{
    error_json, identification_digits, identify_estimate, run_compute, toolchain, ComputeOptions, Computation, Constant,
    Entry, IdentifiedForm, ModeChoice, OutputFormat, ResultRecord, SpecEcho, RECORD_FORMAT,
};
pub use reproduce::{
    isomorphic_strain, match_row, rows_of, run_reproduce, symplectic_strain, table_rows, CrossCheck, EntryReport,
    Expected, ReproduceOptions, ReproduceReport, RowReport, Status, TableRow, TABLES,
};
pub use spec::{Polarization, VarietySpec};

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Reads `1/7,2/7` or `0.25` style lists of rationals.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if let Some((a, b)) = t.split_once('/') {
                let (a, b) = (a.trim().parse(), b.trim().parse());
                match (a, b) {
                    (Ok(a), Ok(b)) => Ok(BigRational::new(a, b)),
                    _ => Err(Error::Config(format!("bad rational {t:?}"))),
                }
            } else if let Some((ip, fp)) = t.split_once('.') {
                let den = num_traits::pow(num_bigint::BigInt::from(10), fp.len());
                let num: num_bigint::BigInt =
                    format!("{ip}{fp}").parse().map_err(|_| Error::Config(format!("bad decimal {t:?}")))?;
                Ok(BigRational::new(num, den))
            } else {
                t.parse().map(BigRational::from_integer).map_err(|_| Error::Config(format!("bad number {t:?}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lists() {
        let v = parse_rationals("1/7, 2/7,0.25,-1").unwrap();
        assert_eq!(v[0], BigRational::new(1.into(), 7.into()));
        assert_eq!(v[2], BigRational::new(1.into(), 4.into()));
        assert_eq!(v[3], BigRational::from_integer((-1).into()));
        assert!(parse_rationals("x").is_err());
    }
}
