//! Serde adapters that store exact values in their text form.

pub mod rational {
    use crate::arith::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(|(q, _)| q).map_err(serde::de::Error::custom)
    }
}

/// Univariate polynomial as `"var|polynomial"`.
pub mod uni {
    use crate::poly::{parse_uni, Poly};
    use crate::arith::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}|{}", p.var(), p))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly<Rational>, D::Error> {
        let s = String::deserialize(d)?;
        let (var, body) = s
            .split_once('|')
            .ok_or_else(|| serde::de::Error::custom("expected `var|polynomial`"))?;
        parse_uni(body, var).map_err(serde::de::Error::custom)
    }
}

/// Bivariate polynomial as `"x,y|polynomial"`.
pub mod bi {
    use crate::arith::Rational;
    use crate::poly::{parse_bi, Poly2};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Poly2<Rational>, s: S) -> Result<S::Ok, S::Error> {
        let [a, b] = p.vars();
        s.serialize_str(&format!("{a},{b}|{p}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly2<Rational>, D::Error> {
        let s = String::deserialize(d)?;
        let err = || serde::de::Error::custom("expected `x,y|polynomial`");
        let (vars, body) = s.split_once('|').ok_or_else(err)?;
        let (a, b) = vars.split_once(',').ok_or_else(err)?;
        parse_bi(body, [a, b]).map_err(serde::de::Error::custom)
    }
}
