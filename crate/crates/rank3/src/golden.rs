//! Tabulated data compiled into the library: the surviving rows of the
//! classification, the U-series and its Fourier coefficients, the table of
//! known examples and the Schellekens-list rows used for glueing.

use crate::error::{Error, Result};
use crate::rat::{parse_q, Q};
use crate::sieve::TableRow;
use num_bigint::BigInt;
use serde::Deserialize;

const DEN5: &str = include_str!("../data/den5.csv");
const DEN7: &str = include_str!("../data/den7.csv");
const IMPRIMITIVE: &str = include_str!("../data/imprimitive.csv");
const USERIES: &str = include_str!("../data/useries.csv");
const FOURIER: &str = include_str!("../data/fourier.csv");
const KNOWN: &str = include_str!("../data/known_examples.csv");
const SCHELLEKENS: &str = include_str!("../data/schellekens.csv");

fn records<T: for<'de> Deserialize<'de>>(src: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(src.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[derive(Deserialize)]
struct RawRow {
    m: String,
    h1: String,
    h2: String,
    c: String,
    c_tilde: String,
}

fn table(src: &str) -> Result<Vec<TableRow>> {
    let raw: Vec<RawRow> = records(src)?;
    let mut rows: Vec<TableRow> = raw
        .into_iter()
        .map(|r| {
            Ok(TableRow {
                m: parse_q(&r.m)?,
                h1: parse_q(&r.h1)?,
                h2: parse_q(&r.h2)?,
                c: parse_q(&r.c)?,
                c_tilde: parse_q(&r.c_tilde)?,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort();
    Ok(rows)
}

/// The 34 denominator-5 rows.
pub fn den5_rows() -> Vec<TableRow> {
    table(DEN5).expect("bundled table parses")
}

/// The 18 denominator-7 rows.
pub fn den7_rows() -> Vec<TableRow> {
    table(DEN7).expect("bundled table parses")
}

/// The imprimitive rows (denominators dividing 16), without the `y = -1/2` family.
pub fn imprimitive_rows() -> Vec<TableRow> {
    table(IMPRIMITIVE).expect("bundled table parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeriesRow {
    pub m: i64,
    pub h1: Q,
    pub h2: Q,
    pub c: Q,
    pub v1: String,
    pub a1: BigInt,
    pub a2: BigInt,
}

impl USeriesRow {
    /// `p` with `h2 = (2p+1)/16`.
    pub fn p(&self) -> i64 {
        let t = &self.h2 * Q::from_integer(16.into()) - Q::from_integer(1.into());
        (t / Q::from_integer(2.into())).to_integer().try_into().unwrap()
    }

    /// `k = 15 - p`.
    pub fn k(&self) -> i64 {
        15 - self.p()
    }
}

#[derive(Deserialize)]
struct RawU {
    m: i64,
    h1: String,
    h2: String,
    c: String,
    v1: String,
    a1: String,
    a2: String,
}

pub fn useries() -> Vec<USeriesRow> {
    let raw: Vec<RawU> = records(USERIES).expect("bundled table parses");
    raw.into_iter()
        .map(|r| USeriesRow {
            m: r.m,
            h1: parse_q(&r.h1).unwrap(),
            h2: parse_q(&r.h2).unwrap(),
            c: parse_q(&r.c).unwrap(),
            v1: r.v1,
            a1: r.a1.parse().unwrap(),
            a2: r.a2.parse().unwrap(),
        })
        .collect()
}

/// Printed leading coefficients of one coordinate of a U-series character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierRow {
    pub h1: Q,
    pub h2: Q,
    pub coordinate: usize,
    pub coefficients: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawF {
    h1: String,
    h2: String,
    coordinate: usize,
    coefficients: String,
}

pub fn fourier_rows() -> Vec<FourierRow> {
    let raw: Vec<RawF> = records(FOURIER).expect("bundled table parses");
    raw.into_iter()
        .map(|r| FourierRow {
            h1: parse_q(&r.h1).unwrap(),
            h2: parse_q(&r.h2).unwrap(),
            coordinate: r.coordinate,
            coefficients: r.coefficients.split_whitespace().map(|s| s.parse().unwrap()).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct KnownExample {
    pub voa: String,
    pub c: String,
    pub h1: String,
    pub h2: String,
}

pub fn known_examples() -> Vec<KnownExample> {
    records(KNOWN).expect("bundled table parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct SchellekensRow {
    pub number: u32,
    pub x1: String,
    pub k: u32,
}

pub fn schellekens_rows() -> Vec<SchellekensRow> {
    records(SCHELLEKENS).expect("bundled table parses")
}

/// The `k` values that occur in the Schellekens rows, plus `k = 0`.
pub fn supported_k() -> Vec<u32> {
    let mut ks: Vec<u32> = std::iter::once(0).chain(schellekens_rows().into_iter().map(|r| r.k)).collect();
    ks.sort();
    ks.dedup();
    ks
}
