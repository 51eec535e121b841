//! Separating Dehn twists as automorphisms of the surface group, words in
//! the mapping class group they generate, and Torelli depth.
//!
//! Handle 1 carries the basepoint. A separating curve `C` is declared by the
//! handles it bounds; its based representative `w_C` is the product of their
//! commutators in some cyclic order. The twist fixes the generators of the
//! handles on the basepoint side and conjugates the others by `w_C^{±1}`.
//!
//! Composition follows function notation: `f g` applies `g` first.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::surface::{LeadingTerm, Surface};
use crate::words::{a, b, generator_name, GroupWord, SurfaceGroup};
use crate::{Error, Result};

/// An endomorphism of the surface group given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<GroupWord>,
    inverse_images: Vec<GroupWord>,
}

impl Automorphism {
    pub fn identity(generators: usize) -> Self {
        Self::from_images((0..generators).map(GroupWord::generator).collect())
    }

    pub fn from_images(images: Vec<GroupWord>) -> Self {
        let inverse_images = images.iter().map(GroupWord::inverse).collect();
        Automorphism { images, inverse_images }
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize) -> &GroupWord {
        &self.images[generator]
    }

    pub fn images(&self) -> &[GroupWord] {
        &self.images
    }

    pub fn apply(&self, w: &GroupWord) -> GroupWord {
        w.substitute(&self.images, &self.inverse_images)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Self::from_images(other.images.iter().map(|w| self.apply(w)).collect())
    }

    /// Action on `H_1`: column `c` holds the exponent sums of the image of generator `c`.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.generators();
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.exponent_sums(n)).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    pub fn acts_trivially_on_homology(&self) -> bool {
        let m = self.homology_matrix();
        m.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| *w == GroupWord::generator(i))
    }
}

/// True iff the assignment on generators defines an endomorphism, i.e. the
/// relator maps to the identity.
pub fn validate_twist(phi: &Automorphism, group: &SurfaceGroup) -> bool {
    phi.generators() == group.generators() && group.dehn_is_trivial(&phi.apply(group.relator()))
}

/// A separating Dehn twist with its chosen based representative.
#[derive(Clone, Debug, Serialize)]
pub struct TwistAutomorphism {
    pub name: String,
    /// Handles bounded by the curve, as declared.
    pub declared_boundary: Vec<usize>,
    /// The cyclic rotation of the declared handles picked by the validator.
    pub boundary: Vec<usize>,
    pub conjugated: Vec<usize>,
    pub sign: i8,
    /// Conjugation direction picked by the validator: images are
    /// `w_C^e c w_C^{-e}` with `e = sign · direction`.
    pub direction: i8,
    #[serde(serialize_with = "serialize_display")]
    pub boundary_word: GroupWord,
    #[serde(skip)]
    automorphism: Automorphism,
    #[serde(skip)]
    inverse: Automorphism,
}

fn serialize_display<S: serde::Serializer, D: fmt::Display>(x: &D, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn conjugating_twist(group: &SurfaceGroup, w: &GroupWord, conjugated: &[usize], exponent: i64) -> Automorphism {
    let we = w.pow(exponent);
    let mut images: Vec<GroupWord> = (0..group.generators()).map(GroupWord::generator).collect();
    for &h in conjugated {
        for c in [a(h), b(h)] {
            images[c] = we.mul(&images[c]).mul(&we.inverse());
        }
    }
    Automorphism::from_images(images)
}

impl TwistAutomorphism {
    pub fn automorphism(&self) -> &Automorphism {
        &self.automorphism
    }

    pub fn inverse_automorphism(&self) -> &Automorphism {
        &self.inverse
    }

    /// Exponent of `w_C` in the images of conjugated generators.
    pub fn exponent(&self) -> i64 {
        i64::from(self.sign) * i64::from(self.direction)
    }

    /// The same curve twisted the other way.
    pub fn inverted(&self) -> TwistAutomorphism {
        TwistAutomorphism {
            sign: -self.sign,
            automorphism: self.inverse.clone(),
            inverse: self.automorphism.clone(),
            ..self.clone()
        }
    }

    /// Generators moved by the twist.
    pub fn conjugated_generators(&self) -> Vec<usize> {
        self.conjugated.iter().flat_map(|&h| [a(h), b(h)]).collect()
    }
}

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidTwist {
        name: name.to_string(),
        reason: reason.into(),
    }
}

/// Builds the twist along the separating curve bounding `boundary`, trying
/// every cyclic rotation of the handle list and both conjugation directions
/// until the relator is preserved.
pub fn make_separating_twist(
    group: &SurfaceGroup,
    name: &str,
    boundary: &[usize],
    conjugated: &[usize],
    sign: i8,
) -> Result<TwistAutomorphism> {
    let g = group.genus();
    if sign != 1 && sign != -1 {
        return Err(invalid(name, format!("sign must be ±1 (got {sign})")));
    }
    if boundary.is_empty() {
        return Err(invalid(name, "boundary lists no handles"));
    }
    for (what, list) in [("boundary", boundary), ("conjugated", conjugated)] {
        if let Some(&h) = list.iter().find(|&&h| h == 0 || h > g) {
            return Err(invalid(name, format!("{what} handle {h} outside 1..={g}")));
        }
        let mut sorted = list.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != list.len() {
            return Err(invalid(name, format!("{what} handles repeat")));
        }
    }
    if conjugated.contains(&1) {
        return Err(invalid(name, "handle 1 carries the basepoint and cannot be conjugated"));
    }
    let mut conjugated_sorted = conjugated.to_vec();
    conjugated_sorted.sort_unstable();
    for r in 0..boundary.len() {
        let rotated: Vec<usize> = boundary[r..].iter().chain(&boundary[..r]).copied().collect();
        let w = rotated
            .iter()
            .fold(GroupWord::identity(), |acc, &h| acc.mul(&SurfaceGroup::handle_commutator(h)));
        for direction in [1i8, -1] {
            let e = i64::from(sign) * i64::from(direction);
            let phi = conjugating_twist(group, &w, &conjugated_sorted, e);
            if validate_twist(&phi, group) {
                if !phi.acts_trivially_on_homology() {
                    return Err(invalid(name, "twist acts nontrivially on homology"));
                }
                let inverse = conjugating_twist(group, &w, &conjugated_sorted, -e);
                return Ok(TwistAutomorphism {
                    name: name.to_string(),
                    declared_boundary: boundary.to_vec(),
                    boundary: rotated,
                    conjugated: conjugated_sorted,
                    sign,
                    direction,
                    boundary_word: w,
                    automorphism: phi,
                    inverse,
                });
            }
        }
    }
    Err(invalid(name, "no rotation or direction of the boundary word preserves the relator"))
}

/// Expression tree of a mapping class word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McgWord {
    Identity,
    Twist(String),
    Inverse(Box<McgWord>),
    /// `f g`: apply the last factor first.
    Compose(Vec<McgWord>),
    /// `[f, g] = f g f⁻¹ g⁻¹`.
    Bracket(Box<McgWord>, Box<McgWord>),
}

impl McgWord {
    pub fn twist(name: &str) -> Self {
        McgWord::Twist(name.to_string())
    }

    pub fn bracket(f: McgWord, g: McgWord) -> Self {
        McgWord::Bracket(Box::new(f), Box::new(g))
    }

    pub fn inverse(self) -> Self {
        McgWord::Inverse(Box::new(self))
    }

    pub fn parse(s: &str) -> Result<McgWord> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let w = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::ExpressionSyntax(format!("unexpected `{}` in `{s}`", p.tokens[p.pos])));
        }
        Ok(w)
    }

    /// Twist names used by the word.
    pub fn leaves(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<String>) {
        match self {
            McgWord::Identity => {}
            McgWord::Twist(n) => out.push(n.clone()),
            McgWord::Inverse(f) => f.collect_leaves(out),
            McgWord::Compose(fs) => fs.iter().for_each(|f| f.collect_leaves(out)),
            McgWord::Bracket(f, g) => {
                f.collect_leaves(out);
                g.collect_leaves(out);
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, tight: bool) -> fmt::Result {
        match self {
            McgWord::Identity => write!(f, "1"),
            McgWord::Twist(n) => write!(f, "{n}"),
            McgWord::Inverse(x) => {
                x.fmt_prec(f, true)?;
                write!(f, "^-1")
            }
            McgWord::Compose(xs) => {
                if tight {
                    write!(f, "(")?;
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    x.fmt_prec(f, true)?;
                }
                if tight {
                    write!(f, ")")?;
                }
                Ok(())
            }
            McgWord::Bracket(x, y) => {
                write!(f, "[")?;
                x.fmt_prec(f, false)?;
                write!(f, ",")?;
                y.fmt_prec(f, false)?;
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

fn tokenize(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "[](),".contains(c) {
            out.push(c.to_string());
            i += 1;
        } else if c == '^' {
            let mut j = i + 1;
            if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                j += 1;
            }
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            out.push(chars[i..j].iter().collect());
            i = j;
        } else if c.is_alphanumeric() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push(chars[i..j].iter().collect());
            i = j;
        } else {
            return Err(Error::ExpressionSyntax(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn expect(&mut self, t: &str) -> Result<()> {
        match self.peek() {
            Some(x) if x == t => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::ExpressionSyntax(format!("expected `{t}`, found {}", other.map_or("end of input".to_string(), |x| format!("`{x}`"))))),
        }
    }

    fn expr(&mut self) -> Result<McgWord> {
        let mut factors = Vec::new();
        while let Some(t) = self.peek() {
            if t == "," || t == "]" || t == ")" {
                break;
            }
            factors.push(self.power()?);
        }
        match factors.len() {
            0 => Err(Error::ExpressionSyntax("empty expression".into())),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(McgWord::Compose(factors)),
        }
    }

    fn power(&mut self) -> Result<McgWord> {
        let mut base = self.atom()?;
        while let Some(t) = self.peek() {
            let Some(e) = t.strip_prefix('^') else { break };
            let n: i64 = e
                .parse()
                .map_err(|_| Error::ExpressionSyntax(format!("bad exponent `{t}`")))?;
            self.pos += 1;
            base = match n {
                0 => McgWord::Identity,
                1 => base,
                -1 => base.inverse(),
                _ => {
                    let unit = if n < 0 { base.inverse() } else { base };
                    McgWord::Compose(vec![unit; n.unsigned_abs() as usize])
                }
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<McgWord> {
        let Some(t) = self.peek().map(str::to_string) else {
            return Err(Error::ExpressionSyntax("unexpected end of input".into()));
        };
        self.pos += 1;
        match t.as_str() {
            "[" => {
                let f = self.expr()?;
                self.expect(",")?;
                let g = self.expr()?;
                self.expect("]")?;
                Ok(McgWord::bracket(f, g))
            }
            "(" => {
                let f = self.expr()?;
                self.expect(")")?;
                Ok(f)
            }
            "1" => Ok(McgWord::Identity),
            _ if t.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') => Ok(McgWord::Twist(t)),
            _ => Err(Error::ExpressionSyntax(format!("unexpected `{t}`"))),
        }
    }
}

/// Named twists over one surface group, in declaration order.
#[derive(Clone, Debug)]
pub struct TwistRegistry {
    group: SurfaceGroup,
    twists: Vec<TwistAutomorphism>,
    by_name: BTreeMap<String, usize>,
}

impl TwistRegistry {
    pub fn new(group: SurfaceGroup) -> Self {
        TwistRegistry {
            group,
            twists: Vec::new(),
            by_name: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &SurfaceGroup {
        &self.group
    }

    pub fn twists(&self) -> &[TwistAutomorphism] {
        &self.twists
    }

    pub fn get(&self, name: &str) -> Result<&TwistAutomorphism> {
        self.by_name
            .get(name)
            .map(|&i| &self.twists[i])
            .ok_or_else(|| Error::UnknownTwist(name.to_string()))
    }

    pub fn declare(&mut self, name: &str, boundary: &[usize], conjugated: &[usize], sign: i8) -> Result<&TwistAutomorphism> {
        if self.by_name.contains_key(name) {
            return Err(invalid(name, "name already declared"));
        }
        let t = make_separating_twist(&self.group, name, boundary, conjugated, sign)?;
        self.by_name.insert(name.to_string(), self.twists.len());
        self.twists.push(t);
        Ok(self.twists.last().unwrap())
    }

    /// Parses an expression and checks that every leaf is declared.
    pub fn parse(&self, expr: &str) -> Result<McgWord> {
        let w = McgWord::parse(expr)?;
        for leaf in w.leaves() {
            self.get(&leaf)?;
        }
        Ok(w)
    }

    /// The automorphism of a word; inverses are pushed down to the leaves.
    pub fn automorphism(&self, m: &McgWord) -> Result<Automorphism> {
        self.automorphism_signed(m, false)
    }

    fn automorphism_signed(&self, m: &McgWord, inverted: bool) -> Result<Automorphism> {
        let n = self.group.generators();
        Ok(match m {
            McgWord::Identity => Automorphism::identity(n),
            McgWord::Twist(name) => {
                let t = self.get(name)?;
                if inverted {
                    t.inverse_automorphism().clone()
                } else {
                    t.automorphism().clone()
                }
            }
            McgWord::Inverse(f) => self.automorphism_signed(f, !inverted)?,
            McgWord::Compose(fs) => {
                let mut out = Automorphism::identity(n);
                let ordered: Box<dyn Iterator<Item = &McgWord>> =
                    if inverted { Box::new(fs.iter()) } else { Box::new(fs.iter().rev()) };
                // `out` accumulates the factors applied so far.
                for f in ordered {
                    out = self.automorphism_signed(f, inverted)?.compose(&out);
                }
                out
            }
            McgWord::Bracket(f, g) => {
                // [f,g]^{-1} = [g,f]
                let (f, g) = if inverted { (g, f) } else { (f, g) };
                let fa = self.automorphism_signed(f, false)?;
                let ga = self.automorphism_signed(g, false)?;
                let fi = self.automorphism_signed(f, true)?;
                let gi = self.automorphism_signed(g, true)?;
                fa.compose(&ga).compose(&fi).compose(&gi)
            }
        })
    }

    pub fn evaluate(&self, m: &McgWord, w: &GroupWord) -> Result<GroupWord> {
        self.group.check_word(w)?;
        Ok(self.automorphism(m)?.apply(w))
    }
}

/// Depth of a mapping class: exact, or bounded below by the explored class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Exact(usize),
    AtLeast(usize),
}

impl Depth {
    /// The guaranteed lower bound.
    pub fn lower_bound(&self) -> usize {
        match *self {
            Depth::Exact(n) | Depth::AtLeast(n) => n,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            Depth::Exact(n) => Some(n),
            Depth::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exact(n) => write!(f, "{n}"),
            Depth::AtLeast(n) => write!(f, "≥ {n}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorLeading {
    pub generator: String,
    pub leading: LeadingTerm,
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthReport {
    pub word: String,
    pub max_class: usize,
    pub depth: Depth,
    pub torelli: bool,
    /// Lower bound `l₁ + l₂ − 1` when the word is a bracket of subwords of depths `l₁, l₂`.
    pub bracket_bound: Option<usize>,
    pub generators: Vec<GeneratorLeading>,
}

impl DepthReport {
    /// Generators whose displacement has the minimal leading degree.
    pub fn witnesses(&self) -> impl Iterator<Item = &GeneratorLeading> {
        let d = self.depth.exact();
        self.generators.iter().filter(move |g| d.is_some() && g.leading.degree() == d)
    }
}

/// Leading terms of `φ(c)·c⁻¹` for every generator `c`, and the resulting depth.
pub fn depth_report(surface: &Surface, registry: &TwistRegistry, m: &McgWord, max_class: usize) -> Result<DepthReport> {
    if max_class < 3 {
        return Err(Error::ClassTooSmall { min: 3, got: max_class });
    }
    surface.check_class(max_class)?;
    if surface.group() != registry.group() {
        return Err(Error::Invariant("twist registry and surface disagree on the genus".into()));
    }
    let phi = registry.automorphism(m)?;
    if !phi.acts_trivially_on_homology() {
        return Err(Error::NotTorelli(m.to_string()));
    }
    let n = surface.generators();
    let generators: Vec<GeneratorLeading> = (0..n)
        .into_par_iter()
        .map(|c| {
            let w = phi.image(c).mul(&GroupWord::generator(c).inverse());
            Ok(GeneratorLeading {
                generator: generator_name(c),
                leading: surface.leading_term(&w, max_class)?,
            })
        })
        .collect::<Result<_>>()?;
    let depth = generators
        .iter()
        .filter_map(|g| g.leading.degree())
        .min()
        .map_or(Depth::AtLeast(max_class), Depth::Exact);
    if depth.lower_bound() < 2 {
        return Err(Error::Invariant(format!("Torelli word {m} moves H_1")));
    }
    let bracket_bound = match m {
        McgWord::Bracket(f, g) => {
            let df = depth_report(surface, registry, f, max_class)?.depth.lower_bound();
            let dg = depth_report(surface, registry, g, max_class)?.depth.lower_bound();
            let bound = df + dg - 1;
            if let Depth::Exact(d) = depth {
                if d < bound.min(max_class) {
                    return Err(Error::Invariant(format!(
                        "depth {d} of {m} is below the bracket bound {bound}"
                    )));
                }
            }
            Some(bound)
        }
        _ => None,
    };
    Ok(DepthReport {
        word: m.to_string(),
        max_class,
        depth,
        torelli: true,
        bracket_bound,
        generators,
    })
}

/// Genus 4 with the two curves of the classical bracket example:
/// `t1` bounds handles 1–2, `t2` bounds handles 1 and 4.
pub fn builtin_s4_scenario() -> Result<TwistRegistry> {
    let mut reg = TwistRegistry::new(SurfaceGroup::new(4)?);
    reg.declare("t1", &[1, 2], &[3, 4], 1)?;
    reg.declare("t2", &[1, 4], &[2, 3], 1)?;
    Ok(reg)
}

/// The twist `t` along the curve cutting off handle 1.
pub fn builtin_separating_twist(genus: usize) -> Result<TwistRegistry> {
    let mut reg = TwistRegistry::new(SurfaceGroup::new(genus)?);
    let others: Vec<usize> = (2..=genus).collect();
    reg.declare("t", &[1], &others, 1)?;
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip() {
        for s in ["t1", "[t1,t2]", "[t1,[t1,t2]]", "t1 t2^-1", "(t1 t2)^-1", "[t1 t2,t2^-1]", "1"] {
            let w = McgWord::parse(s).unwrap();
            assert_eq!(w.to_string(), s);
            assert_eq!(McgWord::parse(&w.to_string()).unwrap(), w);
        }
        assert_eq!(McgWord::parse("t^2").unwrap(), McgWord::Compose(vec![McgWord::twist("t"); 2]));
        assert!(McgWord::parse("[t1,").is_err());
        assert!(McgWord::parse("t1 )").is_err());
        assert!(McgWord::parse("").is_err());
    }

    #[test]
    fn genus_two_twist_images() {
        let reg = builtin_separating_twist(2).unwrap();
        let t = reg.get("t").unwrap();
        let w = t.boundary_word.clone();
        let e = t.exponent();
        assert_eq!(t.automorphism().image(0), &GroupWord::generator(0));
        assert_eq!(t.automorphism().image(1), &GroupWord::generator(1));
        let a2 = GroupWord::generator(2);
        assert_eq!(t.automorphism().image(2), &w.pow(e).mul(&a2).mul(&w.pow(-e)));
        let id = reg.automorphism(&reg.parse("t t^-1").unwrap()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let g = SurfaceGroup::new(2).unwrap();
        let mut reg = TwistRegistry::new(g.clone());
        reg.declare("t", &[1], &[2], 1).unwrap();
        // Not a separating twist; composition order only.
        let f = Automorphism::from_images(vec![
            g.parse_word("a1 a2").unwrap(),
            GroupWord::generator(1),
            GroupWord::generator(2),
            GroupWord::generator(3),
        ]);
        let t = reg.get("t").unwrap().automorphism().clone();
        let x = GroupWord::generator(0);
        assert_eq!(f.compose(&t).apply(&x), f.apply(&t.apply(&x)));
        assert_ne!(f.compose(&t), t.compose(&f));
    }

    #[test]
    fn rejects_bad_declarations() {
        let g = SurfaceGroup::new(3).unwrap();
        assert!(make_separating_twist(&g, "x", &[1], &[1, 2], 1).is_err());
        assert!(make_separating_twist(&g, "x", &[1], &[4], 1).is_err());
        assert!(make_separating_twist(&g, "x", &[1], &[2], 2).is_err());
        // Handle 1 alone does not separate handle 2 from handle 3.
        assert!(make_separating_twist(&g, "x", &[1], &[2], 1).is_err());
        let mut reg = TwistRegistry::new(g);
        reg.declare("t", &[1], &[2, 3], 1).unwrap();
        assert!(reg.declare("t", &[1], &[2, 3], 1).is_err());
        assert!(matches!(reg.parse("[t,u]"), Err(Error::UnknownTwist(_))));
    }

    #[test]
    fn validator_examples() {
        let g = SurfaceGroup::new(2).unwrap();
        assert!(validate_twist(&Automorphism::identity(4), &g));
        let mut images: Vec<GroupWord> = (0..4).map(GroupWord::generator).collect();
        images[0] = GroupWord::generator(2);
        assert!(!validate_twist(&Automorphism::from_images(images), &g));
    }
}
