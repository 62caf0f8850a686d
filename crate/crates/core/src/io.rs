//! JSON schemas. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::crimps::{AmbElem, CrimpError, CrimpGens, LocalRamType};
use crate::exact_core::{format_rational, parse_rational, Jet, Rational, UniPoly};
use crate::families::{ExtensionFamily, FamilyError};
use crate::models::{ModelError, WPoint};
use crate::triple_cover::{CoverError, MirandaCover};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("bad field {0}")]
    Field(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Crimp(#[from] CrimpError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rational_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(format_rational).collect();
    strs.serialize(s)
}

/// Accepts `"p/q"` strings or bare JSON integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_rational(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rational(&s).map(Q).map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Q(Rational::from_integer(i.into()))),
        }
    }
}

pub fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn unq(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverJson {
    pub m: usize,
    pub n: usize,
    pub a: Vec<Q>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
    pub d: Vec<Q>,
}

impl CoverJson {
    pub fn from_cover(q: &MirandaCover) -> Self {
        let p = |u: &UniPoly| qs(u.coeffs());
        CoverJson { m: q.m, n: q.n, a: p(&q.a), b: p(&q.b), c: p(&q.c), d: p(&q.d) }
    }

    pub fn to_cover(&self) -> Result<MirandaCover, IoError> {
        let p = |v: &[Q]| UniPoly::new(unq(v));
        Ok(MirandaCover::new(self.m, self.n, p(&self.a), p(&self.b), p(&self.c), p(&self.d))?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrimpJson {
    pub ram: LocalRamType,
    pub truncation: usize,
    pub gens: Vec<Vec<Vec<Q>>>,
}

impl CrimpJson {
    pub fn from_crimp(c: &CrimpGens) -> Self {
        let gens = c
            .gens
            .iter()
            .map(|g| g.iter().map(|j| qs(j.coeffs())).collect())
            .collect();
        CrimpJson { ram: c.ram, truncation: c.truncation, gens }
    }

    pub fn to_crimp(&self) -> Result<CrimpGens, IoError> {
        if self.gens.len() != 2 {
            return Err(IoError::Field("gens must hold two generators".into()));
        }
        let n = self.truncation;
        if n == 0 {
            return Err(IoError::Field("truncation must be positive".into()));
        }
        let mut out: Vec<AmbElem> = Vec::new();
        for g in &self.gens {
            if g.len() != 3 {
                return Err(IoError::Field("each generator has three coordinates".into()));
            }
            let mut coords = Vec::new();
            for c in g {
                if c.len() > n {
                    return Err(IoError::Field("jet longer than truncation".into()));
                }
                let mut v = unq(c);
                v.resize(n, Rational::from_integer(0.into()));
                coords.push(Jet::new(v));
            }
            out.push([coords[0].clone(), coords[1].clone(), coords[2].clone()]);
        }
        Ok(CrimpGens::new(self.ram, [out[0].clone(), out[1].clone()])?)
    }
}

pub fn parse_cover(s: &str) -> Result<MirandaCover, IoError> {
    serde_json::from_str::<CoverJson>(s)?.to_cover()
}

pub fn parse_crimp(s: &str) -> Result<CrimpGens, IoError> {
    serde_json::from_str::<CrimpJson>(s)?.to_crimp()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub m: usize,
    pub n: usize,
    pub t_trunc: usize,
    pub e: Vec<Vec<Q>>,
}

impl FamilyJson {
    pub fn from_family(f: &ExtensionFamily) -> Self {
        FamilyJson { m: f.m, n: f.n, t_trunc: f.t_trunc, e: f.e.iter().map(|j| qs(j.coeffs())).collect() }
    }

    /// Shorter coefficient lists are padded with zeros.
    pub fn to_family(&self) -> Result<ExtensionFamily, IoError> {
        if self.t_trunc == 0 {
            return Err(IoError::Field("t_trunc must be positive".into()));
        }
        let mut e = Vec::with_capacity(self.e.len());
        for c in &self.e {
            if c.len() > self.t_trunc {
                return Err(IoError::Field("jet longer than t_trunc".into()));
            }
            e.push(Jet::from_slice(&unq(c), self.t_trunc));
        }
        Ok(ExtensionFamily::new(self.m, self.n, self.t_trunc, e)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WPointJson {
    pub g: usize,
    pub a: Vec<Q>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
    pub d: Vec<Q>,
}

impl WPointJson {
    pub fn from_point(p: &WPoint) -> Self {
        WPointJson { g: p.g, a: qs(&p.a), b: qs(&p.b), c: qs(&p.c), d: qs(&p.d) }
    }

    pub fn to_point(&self) -> Result<WPoint, IoError> {
        Ok(WPoint::new(self.g, unq(&self.a), unq(&self.b), unq(&self.c), unq(&self.d))?)
    }
}

pub fn parse_family(s: &str) -> Result<ExtensionFamily, IoError> {
    serde_json::from_str::<FamilyJson>(s)?.to_family()
}

pub fn parse_wpoint(s: &str) -> Result<WPoint, IoError> {
    serde_json::from_str::<WPointJson>(s)?.to_point()
}
