//! Resolution of field names and algebra references.
//!
//! Fields: a manifest name, `Q`, or a base followed by a parenthesized
//! generator: `i`, `sqrtD`, `sqrt-D`, `sqrtmD`, or `zetaN` directly over `Q`.
//! Towers nest, e.g. `Q(i)(sqrt2)` or `K(i)` for a manifest field `K`.
//!
//! Algebras: a manifest name or `family[FIELD](key=value, ...)`, combined with
//! `+` for direct sums and `^k` for repeated summands, e.g.
//! `g_lambda[Q(i)](lambda=1+i)^2 + heisenberg[Q(i)]`.

use std::collections::{HashMap, HashSet};

use lieform::catalog::{abelian, g1_alpha, g_lambda, heisenberg, nintot_family, r3_lambda, r3_lambda_plus_abelian};
use lieform::fields::{galois_group, parse_element, tower_quadratic, Field, FieldElement, Poly};
use lieform::liealg::LieAlgebra;

use crate::error::{CliError, CliResult};
use crate::manifest::{AlgebraDef, BracketDef, Entity, Manifest};

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// A built-in field name, without manifest lookups.
pub fn builtin_field(name: &str) -> CliResult<Field> {
    resolve_field(name, &HashMap::new())
}

/// Whether `name` denotes a field given the names defined so far; checks
/// syntax only.
pub fn names_field(name: &str, known: &HashSet<String>) -> bool {
    let name = name.trim();
    if name == "Q" || known.contains(name) {
        return true;
    }
    match split_suffix(name) {
        Some((prefix, gen)) => parse_generator(gen).is_ok() && names_field(prefix, known),
        None => false,
    }
}

enum Generator {
    Cyclotomic(u32),
    Sqrt(i64),
}

fn parse_generator(gen: &str) -> CliResult<Generator> {
    let gen = gen.trim();
    if let Some(n) = gen.strip_prefix("zeta") {
        let n = n
            .parse()
            .map_err(|_| input(format!("bad cyclotomic order in '{gen}'")))?;
        return Ok(Generator::Cyclotomic(n));
    }
    if gen == "i" {
        return Ok(Generator::Sqrt(-1));
    }
    let rest = gen
        .strip_prefix("sqrt")
        .ok_or_else(|| input(format!("unknown generator '{gen}'")))?;
    let (neg, digits) = match rest.strip_prefix('-').or_else(|| rest.strip_prefix('m')) {
        Some(d) => (true, d),
        None => (false, rest),
    };
    let v: i64 = digits.parse().map_err(|_| input(format!("bad radicand in '{gen}'")))?;
    Ok(Generator::Sqrt(if neg { -v } else { v }))
}

fn resolve_field(name: &str, known: &HashMap<String, Field>) -> CliResult<Field> {
    let name = name.trim();
    if let Some(f) = known.get(name) {
        return Ok(f.clone());
    }
    if name == "Q" {
        return Ok(Field::rationals());
    }
    let (prefix, gen) = split_suffix(name).ok_or_else(|| input(format!("unknown field '{name}'")))?;
    let base = resolve_field(prefix, known)?;
    match parse_generator(gen)? {
        Generator::Cyclotomic(n) => {
            if !base.is_rationals() {
                return Err(input(format!("'{gen}' can only be adjoined to Q")));
            }
            Ok(Field::cyclotomic(n)?)
        }
        Generator::Sqrt(d) => {
            let gen_name = match d {
                -1 => "i".to_string(),
                d if d < 0 => format!("sqrtm{}", -d),
                d => format!("sqrt{d}"),
            };
            Ok(tower_quadratic(&base, d, &gen_name)?)
        }
    }
}

/// `Q(i)(sqrt2)` splits into `Q(i)` and `sqrt2`.
fn split_suffix(name: &str) -> Option<(&str, &str)> {
    let inner = name.strip_suffix(')')?;
    let open = inner.rfind('(')?;
    Some((&name[..open], &inner[open + 1..]))
}

/// Manifest plus the fields it defines, built in order.
pub struct Context {
    manifest: Manifest,
    fields: HashMap<String, Field>,
}

impl Context {
    pub fn new(manifest: Manifest) -> CliResult<Context> {
        let mut fields = HashMap::new();
        for def in manifest.fields() {
            let base = resolve_field(&def.base, &fields)?;
            let coeffs = def
                .minpoly
                .iter()
                .map(|s| parse_element(&base, s))
                .collect::<Result<Vec<_>, _>>()?;
            let images = def
                .automorphisms
                .iter()
                .map(|img| {
                    img.iter()
                        .map(|s| parse_element(&base, s))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let field = Field::extend(&base, def.generator_name(), &Poly::new(&base, coeffs), &images)
                .map_err(|e| input(format!("field '{}': {e}", def.name)))?;
            fields.insert(def.name.clone(), field);
        }
        Ok(Context { manifest, fields })
    }

    pub fn empty() -> Context {
        Context {
            manifest: Manifest::default(),
            fields: HashMap::new(),
        }
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn field(&self, name: &str) -> CliResult<Field> {
        resolve_field(name, &self.fields)
    }

    /// A name that resolves back to `f`: a manifest name where possible.
    pub fn field_name(&self, f: &Field) -> String {
        let mut named: Vec<&String> = self.fields.iter().filter(|(_, g)| *g == f).map(|(n, _)| n).collect();
        named.sort();
        if let Some(n) = named.first() {
            return (*n).clone();
        }
        match f.base() {
            None => "Q".to_string(),
            Some(b) => format!("{}({})", self.field_name(b), f.generator_name()),
        }
    }

    pub fn element(&self, field: &Field, s: &str) -> CliResult<FieldElement> {
        parse_element(field, s).map_err(|e| input(format!("cannot parse \"{s}\" in {field}: {e}")))
    }

    /// Resolves an algebra reference. Jacobi failures surface as library
    /// errors so that `check` can report them.
    pub fn algebra(&self, reference: &str) -> CliResult<LieAlgebra> {
        let parts = split_top(reference, '+');
        let mut algebras = Vec::new();
        for part in parts {
            let part = part.trim();
            let (body, times) = match split_top(part, '^').as_slice() {
                [b] => (b.trim().to_string(), 1),
                [b, k] => {
                    let k: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| input(format!("bad repeat count in '{part}'")))?;
                    if k == 0 {
                        return Err(input("repeat count must be positive"));
                    }
                    (b.trim().to_string(), k)
                }
                _ => return Err(input(format!("bad algebra reference '{part}'"))),
            };
            let a = self.atom(&body)?;
            algebras.extend(std::iter::repeat_n(a, times));
        }
        match algebras.len() {
            0 => Err(input("empty algebra reference")),
            1 => Ok(algebras.pop().expect("one")),
            _ => Ok(LieAlgebra::direct_sum_all(&algebras)?),
        }
    }

    fn atom(&self, body: &str) -> CliResult<LieAlgebra> {
        if body.is_empty() {
            return Err(input("empty algebra reference"));
        }
        if let Some(def) = self.manifest.algebra(body) {
            return self.build(def);
        }
        let (family, rest) = match body.find(['[', '(']) {
            Some(p) => (&body[..p], &body[p..]),
            None => (body, ""),
        };
        let (field_name, rest) = match rest.strip_prefix('[') {
            Some(r) => {
                let close = matching(r, '[', ']').ok_or_else(|| input(format!("unclosed '[' in '{body}'")))?;
                (&r[..close], &r[close + 1..])
            }
            None => ("Q(i)", rest),
        };
        let params = match rest.trim() {
            "" => Vec::new(),
            r => {
                let inner = r
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| input(format!("bad parameter list in '{body}'")))?;
                split_top(inner, ',')
                    .into_iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|kv| {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| input(format!("expected key=value, got '{kv}'")))?;
                        Ok((k.trim().to_string(), v.trim().to_string()))
                    })
                    .collect::<CliResult<Vec<_>>>()?
            }
        };
        let field = self.field(field_name)?;
        let params: HashMap<String, String> = params.into_iter().collect();
        self.family(family.trim(), &field, &params)
    }

    /// Builds a catalog family member over `field`.
    pub fn family(&self, family: &str, field: &Field, params: &HashMap<String, String>) -> CliResult<LieAlgebra> {
        let allowed: &[&str] = match family {
            "heisenberg" | "h3" => &[],
            "abelian" => &["n"],
            "g_lambda" | "r3" | "r3_lambda" | "r3_plus_abelian" => &["lambda"],
            "g1" | "g1_alpha" => &["alpha"],
            "nintot" => &["lambda", "k", "j"],
            _ => return Err(input(format!("unknown algebra or family '{family}'"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(input(format!("family '{family}' has no parameter '{k}'")));
        }
        let elem = |key: &str| -> CliResult<FieldElement> {
            let s = params
                .get(key)
                .ok_or_else(|| input(format!("family '{family}' needs {key}=...")))?;
            self.element(field, s)
        };
        let count = |key: &str| -> CliResult<usize> {
            let s = params
                .get(key)
                .ok_or_else(|| input(format!("family '{family}' needs {key}=...")))?;
            s.parse()
                .map_err(|_| input(format!("{key} must be a non-negative integer")))
        };
        Ok(match family {
            "heisenberg" | "h3" => heisenberg(field),
            "abelian" => abelian(field, count("n")?),
            "g_lambda" => g_lambda(field, &elem("lambda")?)?,
            "r3" | "r3_lambda" => r3_lambda(field, &elem("lambda")?)?,
            "r3_plus_abelian" => r3_lambda_plus_abelian(field, &elem("lambda")?)?,
            "g1" | "g1_alpha" => g1_alpha(field, &elem("alpha")?)?,
            _ => {
                let group = galois_group(field, &Field::rationals())?;
                let sigma = group
                    .elements
                    .iter()
                    .find(|s| !s.is_identity())
                    .ok_or_else(|| input("nintot needs a field with a nontrivial automorphism"))?;
                nintot_family(field, &elem("lambda")?, count("k")?, count("j")?, sigma)?
            }
        })
    }

    fn build(&self, def: &AlgebraDef) -> CliResult<LieAlgebra> {
        let field = self.field(&def.field)?;
        let constants = def
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, b.k, self.element(&field, &b.coeff)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(LieAlgebra::new(&field, def.dim, constants)?)
    }

    /// The manifest entity describing `l`.
    pub fn entity(&self, name: &str, l: &LieAlgebra) -> Entity {
        Entity::Algebra(AlgebraDef {
            name: name.to_string(),
            field: self.field_name(l.field()),
            dim: l.dim(),
            brackets: l
                .constants()
                .into_iter()
                .map(|(i, j, k, c)| BracketDef {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    coeff: c.to_string(),
                })
                .collect(),
        })
    }
}

/// Splits at `sep` outside brackets and parentheses.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// Index of the bracket closing an already opened one.
fn matching(s: &str, open: char, close: char) -> Option<usize> {
    let mut depth = 1;
    for (i, c) in s.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}
