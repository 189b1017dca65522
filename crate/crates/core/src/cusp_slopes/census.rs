use serde::Serialize;

use super::{canonicalize, gcd, search_box, slope_length, CuspLattice};
use crate::error::{Error, Result};
use crate::numerics::{sqrt_int, two_v3, Interval};

pub const CENSUS_HEADER: [&str; 7] = [
    "name",
    "volume_lo",
    "volume_hi",
    "mu_x",
    "mu_y",
    "lambda_x",
    "lambda_y",
];

/// Cusp data for the eight census manifolds besides m003 and m004. These
/// translations were computed externally (maximal cusp, meridian `mu`,
/// longitude `lambda` along the real axis); they are not part of the
/// published record.
const EMBEDDED_CSV: &str = include_str!("census.csv");

/// Tolerance for the fixed area and length invariants of m003 and m004.
const INVARIANT_TOL: &str = "1e-9";

#[derive(Clone, Debug, Serialize)]
pub struct CensusManifold {
    pub name: String,
    pub volume: Interval,
    pub lattice: CuspLattice,
    pub shortest_primitive_length: Interval,
}

impl CensusManifold {
    pub fn new(name: &str, volume: Interval, lattice: CuspLattice) -> Result<Self> {
        if !volume.is_positive() {
            return Err(Error::Validation(format!(
                "{name}: volume {volume} is not positive"
            )));
        }
        let shortest_primitive_length = shortest_vector_length(&lattice);
        let m = Self {
            name: name.to_string(),
            volume,
            lattice,
            shortest_primitive_length,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let prec = self.lattice.prec();
        let tol = Interval::parse(INVARIANT_TOL, prec)?;
        let close = |x: &Interval, target: &Interval| target.inflate(&tol).encloses(x);
        let expected_shortest = match self.name.as_str() {
            "m003" => 2,
            "m004" => 1,
            _ => return Ok(()),
        };
        let area = self.lattice.area();
        let two_root3 = sqrt_int(3, prec) * Interval::from_int(2, prec);
        if !close(&area, &two_root3) {
            return Err(Error::Validation(format!(
                "{}: cusp area {area} differs from 2√3",
                self.name
            )));
        }
        if !close(
            &self.shortest_primitive_length,
            &Interval::from_int(expected_shortest, prec),
        ) {
            return Err(Error::Validation(format!(
                "{}: shortest slope length {} differs from {expected_shortest}",
                self.name, self.shortest_primitive_length
            )));
        }
        Ok(())
    }
}

/// Length of the shortest nonzero lattice vector (always primitive), as the
/// hull of every vector that might attain the minimum.
fn shortest_vector_length(lattice: &CuspLattice) -> Interval {
    let prec = lattice.prec();
    let start = slope_length(lattice, canonicalize(1, 0).expect("nonzero"));
    let radius = Interval::point(start.hi().clone());
    let lengths: Vec<Interval> = search_box(lattice, &radius)
        .rows
        .iter()
        .flat_map(|&(b, lo, hi)| (lo..=hi).map(move |a| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0) && gcd(a, b) == 1)
        .map(|(a, b)| slope_length(lattice, canonicalize(a, b).expect("nonzero")))
        .collect();
    let min_hi = lengths
        .iter()
        .map(|l| l.hi().clone())
        .fold(start.hi().clone(), |acc, h| acc.min(&h));
    lengths
        .into_iter()
        .filter(|l| l.lo() <= &min_hi)
        .fold(None::<Interval>, |acc, l| {
            Some(acc.map_or(l.clone(), |h| h.hull(&l)))
        })
        .unwrap_or_else(|| start.with_prec(prec))
}

fn parse_field(text: &str, line: usize, field: &str, prec: u32) -> Result<Interval> {
    Interval::parse(text, prec).map_err(|_| Error::Parse {
        line,
        message: format!("field `{field}`: `{text}` is not a decimal"),
    })
}

/// Parses census records in the `name,volume_lo,volume_hi,mu_x,mu_y,
/// lambda_x,lambda_y` format. Decimals are enclosed by outward rounding.
pub fn load_census(source: &str, prec: u32) -> Result<Vec<CensusManifold>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let header = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if header.iter().collect::<Vec<_>>() != CENSUS_HEADER {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`", CENSUS_HEADER.join(",")),
        });
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != CENSUS_HEADER.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected 7 fields, found {}", record.len()),
            });
        }
        let f = |i: usize| parse_field(&record[i], line, CENSUS_HEADER[i], prec);
        let (vlo, vhi) = (f(1)?, f(2)?);
        let volume =
            Interval::try_new(vlo.lo().clone(), vhi.hi().clone()).map_err(|_| Error::Parse {
                line,
                message: "volume_lo exceeds volume_hi".into(),
            })?;
        let lattice = CuspLattice::new([f(3)?, f(4)?], [f(5)?, f(6)?])
            .map_err(|e| Error::Validation(format!("line {line}: {e}")))?;
        out.push(CensusManifold::new(&record[0], volume, lattice)?);
    }
    Ok(out)
}

fn m003(prec: u32) -> CensusManifold {
    let lattice = CuspLattice::new(
        [Interval::one(prec), sqrt_int(3, prec)],
        [Interval::from_int(2, prec), Interval::zero(prec)],
    )
    .expect("m003 lattice");
    CensusManifold::new("m003", two_v3(prec), lattice).expect("m003 record")
}

fn m004(prec: u32) -> CensusManifold {
    let lattice = CuspLattice::new(
        [Interval::one(prec), Interval::zero(prec)],
        [
            Interval::zero(prec),
            sqrt_int(3, prec) * Interval::from_int(2, prec),
        ],
    )
    .expect("m004 lattice");
    CensusManifold::new("m004", two_v3(prec), lattice).expect("m004 record")
}

/// The ten census manifolds of volume at most 2.848, in census order.
pub fn embedded_census(prec: u32) -> Vec<CensusManifold> {
    let mut all = vec![m003(prec), m004(prec)];
    all.extend(load_census(EMBEDDED_CSV, prec).expect("embedded census data"));
    all
}

pub fn census_manifold(name: &str, prec: u32) -> Result<CensusManifold> {
    match name {
        "m003" => Ok(m003(prec)),
        "m004" => Ok(m004(prec)),
        _ => embedded_census(prec)
            .into_iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown census manifold `{name}`"))),
    }
}
