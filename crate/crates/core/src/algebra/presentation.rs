use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Scalar};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A word in the generators, stored as generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn degree(&self, degrees: &[usize]) -> usize {
        self.0.iter().map(|&g| degrees[g as usize]).sum()
    }

    /// Render with exponents for repeated letters, e.g. `x^2y` or `x1*x2^3`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let compact = names.iter().all(|n| n.chars().count() == 1);
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let run = j - i;
            let n = &names[g as usize];
            parts.push(if run == 1 {
                n.clone()
            } else {
                format!("{n}^{run}")
            });
            i = j;
        }
        if compact {
            parts.concat()
        } else {
            parts.join("*")
        }
    }
}

/// Noncommutative polynomial: a list of (coefficient, word) terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    pub terms: Vec<(Scalar, Word)>,
}

impl NcPolynomial {
    pub fn new(terms: Vec<(Scalar, Word)>) -> Self {
        NcPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    /// Combine equal words and drop zero terms.
    pub fn simplified(&self) -> NcPolynomial {
        let mut map: std::collections::BTreeMap<Word, Scalar> = Default::default();
        for (c, w) in &self.terms {
            match map.get_mut(w) {
                Some(x) => *x = &*x + c,
                None => {
                    map.insert(w.clone(), c.clone());
                }
            }
        }
        NcPolynomial {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (c, w))
                .collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (c, w) in &self.terms {
            let ws = w.render(names);
            let neg = c
                .as_rational()
                .is_some_and(|r| r < num_traits::Zero::zero());
            let mag = if neg { -c } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                s.push_str(&ws);
            } else if w.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                s.push_str(&format!("{mag}*{ws}"));
            }
        }
        s
    }
}

/// User assertions about properties that cannot be decided from a presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gldim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub as_regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noetherian: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul: Option<bool>,
    /// The smash product with the acting Hopf algebra is prime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smash_product_prime: Option<bool>,
    /// The invariant subring has finite global dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_ring_finite_gldim: Option<bool>,
}

impl Assertions {
    pub fn holds(flag: Option<bool>) -> bool {
        flag == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    field: Field,
    generators: Vec<Generator>,
    relations: Vec<NcPolynomial>,
    pub assertions: Assertions,
}

impl AlgebraPresentation {
    pub fn new(
        field: Field,
        generators: Vec<Generator>,
        relations: Vec<NcPolynomial>,
        assertions: Assertions,
    ) -> Result<Self> {
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator '{}' has degree 0; degrees must be positive",
                    g.name
                )));
            }
            if g.name.is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "generator {i} has an empty name"
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator name '{}'",
                    g.name
                )));
            }
        }
        let degrees: Vec<usize> = generators.iter().map(|g| g.degree).collect();
        let mut rels = Vec::with_capacity(relations.len());
        for (index, r) in relations.into_iter().enumerate() {
            for (c, w) in &r.terms {
                if c.field() != field {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {index} has a coefficient outside the base field"
                    )));
                }
                if let Some(&g) = w.0.iter().find(|&&g| g as usize >= generators.len()) {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {index} uses unknown generator index {g}"
                    )));
                }
            }
            let r = r.simplified();
            let mut degs = r.terms.iter().map(|(_, w)| w.degree(&degrees));
            if let Some(d0) = degs.next() {
                if d0 == 0 || degs.any(|d| d != d0) {
                    return Err(Error::NonHomogeneous { index });
                }
            }
            rels.push(r);
        }
        Ok(AlgebraPresentation {
            field,
            generators,
            relations: rels,
            assertions,
        })
    }

    /// Build from relation strings such as `"x^2*y - y*x^2"`.
    pub fn parse(field: Field, gens: &[(&str, usize)], relations: &[&str]) -> Result<Self> {
        let generators: Vec<Generator> = gens
            .iter()
            .map(|(n, d)| Generator {
                name: n.to_string(),
                degree: *d,
            })
            .collect();
        let shell = AlgebraPresentation::new(
            field.clone(),
            generators.clone(),
            vec![],
            Assertions::default(),
        )?;
        let rels = relations
            .iter()
            .map(|s| shell.parse_polynomial(s))
            .collect::<Result<Vec<_>>>()?;
        AlgebraPresentation::new(field, generators, rels, Assertions::default())
    }

    pub fn with_assertions(mut self, a: Assertions) -> Self {
        self.assertions = a;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPolynomial] {
        &self.relations
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn relation_degree(&self, i: usize) -> Option<usize> {
        let degs = self.degrees();
        self.relations[i]
            .terms
            .first()
            .map(|(_, w)| w.degree(&degs))
    }

    pub fn generated_in_degree_one(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 1)
    }

    pub fn word_from_names(&self, names: &[&str]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                self.generator_index(n)
                    .map(|i| i as u16)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator '{n}'")))
            })
            .collect::<Result<Vec<u16>>>()
            .map(Word)
    }

    /// Parse `"2*x^2*y - 1/3 yx + 1"`. Identifiers that are not generator names are split
    /// into single-letter generators when possible (`xyx`).
    pub fn parse_polynomial(&self, s: &str) -> Result<NcPolynomial> {
        let err = |m: String| Error::InvalidPresentation(format!("cannot parse '{s}': {m}"));
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut terms = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let mut sign = 1i64;
            while pos < chars.len()
                && (chars[pos] == '+' || chars[pos] == '-' || chars[pos].is_whitespace())
            {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut coeff = self.field.from_int(sign);
            let mut letters: Vec<u16> = Vec::new();
            let mut any = false;
            loop {
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] == '+' || chars[pos] == '-' {
                    break;
                }
                if chars[pos] == '*' {
                    pos += 1;
                    continue;
                }
                if chars[pos] == '[' {
                    let start = pos + 1;
                    let end = chars[start..]
                        .iter()
                        .position(|&c| c == ']')
                        .map(|k| start + k)
                        .ok_or_else(|| err("missing ']'".into()))?;
                    let txt: String = chars[start..end].iter().collect();
                    let coords = txt
                        .split(',')
                        .map(|t| {
                            parse_rational(t)
                                .ok_or_else(|| err(format!("bad coordinate '{}'", t.trim())))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    coeff = &coeff * &self.field.from_coeffs(coords);
                    pos = end + 1;
                    any = true;
                    continue;
                }
                if chars[pos].is_ascii_digit() || chars[pos] == '(' {
                    let paren = chars[pos] == '(';
                    if paren {
                        pos += 1;
                    }
                    let start = pos;
                    while pos < chars.len()
                        && (chars[pos].is_ascii_digit()
                            || chars[pos] == '/'
                            || (paren && chars[pos] == '-'))
                    {
                        pos += 1;
                    }
                    let txt: String = chars[start..pos].iter().collect();
                    if paren {
                        if pos >= chars.len() || chars[pos] != ')' {
                            return Err(err("missing ')'".into()));
                        }
                        pos += 1;
                    }
                    let q =
                        parse_rational(&txt).ok_or_else(|| err(format!("bad number '{txt}'")))?;
                    coeff = &coeff * &self.field.from_rational(q);
                    any = true;
                    continue;
                }
                if chars[pos].is_alphabetic() || chars[pos] == '_' {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                        pos += 1;
                    }
                    let ident: String = chars[start..pos].iter().collect();
                    let mut exp = 1usize;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        let st = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let t: String = chars[st..pos].iter().collect();
                        exp = t.parse().map_err(|_| err("bad exponent".into()))?;
                    }
                    let mut idents: Vec<u16> = match self.generator_index(&ident) {
                        Some(i) => vec![i as u16],
                        None => ident
                            .chars()
                            .map(|c| {
                                self.generator_index(&c.to_string())
                                    .map(|i| i as u16)
                                    .ok_or_else(|| err(format!("unknown generator '{ident}'")))
                            })
                            .collect::<Result<Vec<u16>>>()?,
                    };
                    // the exponent binds to the last letter only
                    let last = idents.pop().unwrap();
                    letters.extend(idents);
                    letters.extend(std::iter::repeat_n(last, exp));
                    any = true;
                    continue;
                }
                return Err(err(format!("unexpected character '{}'", chars[pos])));
            }
            if !any {
                return Err(err("empty term".into()));
            }
            terms.push((coeff, Word(letters)));
        }
        Ok(NcPolynomial::new(terms).simplified())
    }

    /// Add all words crossing degree `d` as relations, giving A/A_{≥d}.
    pub fn quotient_truncation(&self, d: usize) -> Result<AlgebraPresentation> {
        if d == 0 {
            return Err(Error::InvalidPresentation(
                "truncation degree must be positive".into(),
            ));
        }
        let degs = self.degrees();
        let one = self.field.one();
        let mut rels = self.relations.clone();
        // words w with deg w ≥ d whose proper prefix has degree < d
        let mut stack: Vec<(Vec<u16>, usize)> = vec![(Vec::new(), 0)];
        let mut crossing = Vec::new();
        while let Some((w, deg)) = stack.pop() {
            for (g, &e) in degs.iter().enumerate() {
                let mut w2 = w.clone();
                w2.push(g as u16);
                if deg + e >= d {
                    crossing.push(Word(w2));
                } else {
                    stack.push((w2, deg + e));
                }
            }
        }
        crossing.sort_by(|a, b| a.degree(&degs).cmp(&b.degree(&degs)).then(a.cmp(b)));
        for w in crossing {
            rels.push(NcPolynomial::new(vec![(one.clone(), w)]));
        }
        AlgebraPresentation::new(
            self.field.clone(),
            self.generators.clone(),
            rels,
            Assertions::default(),
        )
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        let rels: Vec<String> = self.relations.iter().map(|r| r.render(&names)).collect();
        write!(
            f,
            "{}<{}>/({})",
            self.field.label(),
            names.join(","),
            rels.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let q = Field::rationals();
        let p =
            AlgebraPresentation::parse(q, &[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"])
                .unwrap();
        assert_eq!(p.relations().len(), 2);
        assert_eq!(p.relations()[0].render(&p.names()), "x^2y - yx^2");
        assert_eq!(p.relation_degree(1), Some(3));
    }

    #[test]
    fn rejects_non_homogeneous() {
        let q = Field::rationals();
        let e = AlgebraPresentation::parse(q, &[("x", 1), ("y", 1)], &["x^2 + y"]).unwrap_err();
        assert_eq!(e, Error::NonHomogeneous { index: 0 });
        assert_eq!(e.to_string(), "relation 0 not homogeneous");
    }

    #[test]
    fn rejects_degree_zero_generator() {
        assert!(AlgebraPresentation::parse(Field::rationals(), &[("x", 0)], &[]).is_err());
    }

    #[test]
    fn coefficients_parse() {
        let q = Field::rationals();
        let p =
            AlgebraPresentation::parse(q.clone(), &[("x", 1), ("y", 1)], &["yx - 2/3 xy"]).unwrap();
        let r = &p.relations()[0];
        assert_eq!(r.terms[0].0, q.from_ratio(-2, 3));
        assert_eq!(r.terms[0].1, Word(vec![0, 1]));
        let f = Field::cyclotomic(3).unwrap();
        let p = AlgebraPresentation::parse(f.clone(), &[("x", 1), ("y", 1)], &["yx - [0,1]xy"])
            .unwrap();
        let w = f.generator();
        assert_eq!(p.relations()[0].terms[0].0, -w);
    }

    #[test]
    fn truncation_words() {
        let q = Field::rationals();
        let p = AlgebraPresentation::parse(q, &[("a", 1), ("b", 2)], &[]).unwrap();
        let t = p.quotient_truncation(2).unwrap();
        // crossing words: aa, b (degree 2), ab (degree 3)
        assert_eq!(t.relations().len(), 3);
    }
}
