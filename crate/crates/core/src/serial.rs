//! Serde helpers that write exact values as strings.

use serde::Serializer;

use crate::poly::{Polynomial, Rational};

pub(crate) fn poly<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub(crate) fn rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn point<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub(crate) fn points<S: Serializer>(vs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(vs.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()))
}
