//! Module description files.
//!
//! ```text
//! # comments start with '#'
//! local P(1) = P 1
//! local P(1)/S(3) = P 1 / a*b
//! local P(1)/soc P(1) = P 1 / soc
//! local top = P 2 / J^1
//! local S 3                      # unnamed; label "S(3)"
//! module M = P(1) + P(1)/S(3)
//! ```
//!
//! Generators after `/` are path expressions in `e_v A`, or the keywords
//! `soc` and `J^k`. `module M = A` takes the regular module. Without a
//! `module` line every declared local is used in order.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::adr::{AdrError, AdrModule};
use crate::module::{Module, ModuleError};
use crate::presentation::{Presentation, PresentationError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Element { line: usize, source: PresentationError },
    #[error("line {line}: {source}")]
    Module { line: usize, source: ModuleError },
    #[error(transparent)]
    Adr(#[from] AdrError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Syntax { line, msg: msg.into() }
}

fn parse_local(pres: &Arc<Presentation>, line: usize, body: &str) -> Result<Module, FileError> {
    let (name, rhs) = match body.split_once('=') {
        Some((n, r)) => (Some(n.trim().to_string()), r.trim()),
        None => (None, body.trim()),
    };
    let (head, gens) = match rhs.split_once('/') {
        Some((h, g)) => (h.trim(), Some(g.trim())),
        None => (rhs, None),
    };
    let mut words = head.split_whitespace();
    let kind = words.next().ok_or_else(|| syntax(line, "expected `P <vertex>` or `S <vertex>`"))?;
    let vertex = words.next().ok_or_else(|| syntax(line, "missing vertex"))?;
    if words.next().is_some() {
        return Err(syntax(line, format!("unexpected text after vertex in `{head}`")));
    }
    let v = pres
        .quiver()
        .vertex_index(vertex)
        .ok_or_else(|| syntax(line, format!("unknown vertex `{vertex}`")))?;
    let p = Module::projective(pres, v);
    let mut kernel = p.radical_power(p.loewy_length());
    let default_name = match kind {
        "P" => format!("P({vertex})"),
        "S" => {
            kernel = p.radical();
            format!("S({vertex})")
        }
        _ => return Err(syntax(line, format!("unknown module kind `{kind}`"))),
    };
    let mut gen_text = Vec::new();
    for g in gens.into_iter().flat_map(|g| g.split(',')).map(str::trim) {
        if g.is_empty() {
            return Err(syntax(line, "empty generator"));
        }
        gen_text.push(g.to_string());
        let sub = if g == "soc" {
            p.socle()
        } else if let Some(k) = g.strip_prefix("J^") {
            let k: usize = k.parse().map_err(|_| syntax(line, format!("bad radical power `{g}`")))?;
            p.radical_power(k)
        } else {
            let e = pres.parse_element(g).map_err(|source| FileError::Element { line, source })?;
            let x = Module::projective_vector(pres, v, &e).map_err(|source| FileError::Module { line, source })?;
            p.generate_from(&x)
        };
        kernel = kernel.sum(&sub);
    }
    let name = name.unwrap_or_else(|| {
        if gen_text.is_empty() {
            default_name.clone()
        } else {
            format!("{default_name}/<{}>", gen_text.join(", "))
        }
    });
    let m = p.quotient(&kernel, name).0;
    if m.is_zero() {
        return Err(syntax(line, "quotient is zero"));
    }
    Ok(m)
}

/// Parses a module description against `pres`.
pub fn parse_module_file(pres: &Arc<Presentation>, text: &str) -> Result<AdrModule, FileError> {
    let mut locals: Vec<Module> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut selected: Option<Vec<usize>> = None;
    let mut regular = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(body) = l.strip_prefix("local ") {
            let m = parse_local(pres, line, body)?;
            if names.insert(m.name().to_string(), locals.len()).is_some() {
                return Err(syntax(line, format!("duplicate local `{}`", m.name())));
            }
            locals.push(m);
        } else if let Some(body) = l.strip_prefix("module ") {
            if selected.is_some() || regular {
                return Err(syntax(line, "more than one `module` line"));
            }
            let (_, rhs) = body.split_once('=').ok_or_else(|| syntax(line, "expected `module M = X1 + X2 ...`"))?;
            if rhs.trim() == "A" && !names.contains_key("A") {
                regular = true;
                continue;
            }
            let mut ids = Vec::new();
            for part in rhs.split('+').map(str::trim) {
                let &id = names.get(part).ok_or_else(|| syntax(line, format!("unknown local `{part}`")))?;
                ids.push(id);
            }
            selected = Some(ids);
        } else {
            return Err(syntax(line, format!("expected `local` or `module`, found `{l}`")));
        }
    }
    if regular {
        return Ok(AdrModule::of_algebra(pres)?);
    }
    let chosen = match selected {
        Some(ids) => ids.into_iter().map(|i| locals[i].clone()).collect(),
        None => locals,
    };
    Ok(AdrModule::new(pres.clone(), chosen)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Prime;
    use crate::presentation::{parse_presentation, DEFAULT_CAP};

    fn pres(s: &str) -> Arc<Presentation> {
        Arc::new(parse_presentation(s, Prime::DEFAULT, DEFAULT_CAP).unwrap())
    }

    const EX22: &str = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n";
    const LOOP: &str =
        "quiver\nvertices: 1 2\narrow alpha: 1 -> 1\narrow beta: 1 -> 2\nrelations\nrel: alpha*beta\nrel: alpha*alpha*alpha\n";

    #[test]
    fn example_file() {
        let a = pres(EX22);
        let text = "local P(1) = P 1\nlocal P(1)/S(3) = P 1 / a*b\nlocal P(1)/S(4) = P 1 / a*c\n\
                    local P(2)/S(3) = P 2 / b   # trailing comment\nmodule M = P(1) + P(1)/S(3) + P(1)/S(4) + P(2)/S(3)\n";
        let adr = parse_module_file(&a, text).unwrap();
        assert_eq!(adr.len(), 7);
        assert_eq!(adr.stratify().unwrap().n_m(), 4);
        let dims: Vec<Vec<usize>> = adr.locals().iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![1, 1, 1, 1], vec![1, 1, 0, 1], vec![1, 1, 1, 0], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn keywords_and_regular_module() {
        let a = pres(LOOP);
        let adr = parse_module_file(&a, "local P(1) = P 1\nlocal P(1)/soc P(1) = P 1 / soc\nlocal P 2\n").unwrap();
        assert_eq!(adr.len(), 5);
        assert!(adr.labels().contains(&"P(1)/soc P(1)".to_string()));
        let s = parse_module_file(&a, "local S 1\n").unwrap();
        assert_eq!(s.labels(), vec!["S(1)"]);
        let j2 = parse_module_file(&a, "local P 1 / J^2\n").unwrap();
        assert_eq!(j2.catalog()[0].dims(), &[2, 1]);
        assert_eq!(parse_module_file(&a, "module M = A\n").unwrap().len(), AdrModule::of_algebra(&a).unwrap().len());
    }

    #[test]
    fn errors_carry_lines() {
        let a = pres(EX22);
        let err = |t: &str| parse_module_file(&a, t).unwrap_err().to_string();
        assert!(err("local P 9\n").starts_with("line 1"));
        assert!(err("local P 1\nbogus\n").starts_with("line 2"));
        assert!(err("local P 1\nmodule M = Q\n").contains("unknown local"));
        assert!(err("local P 1 / e1\n").contains("zero"));
        assert!(err("local X = P 1\nlocal X = P 2\n").contains("duplicate"));
        assert!(matches!(parse_module_file(&a, "local P 1 / zz\n"), Err(FileError::Element { line: 1, .. })));
        assert!(matches!(parse_module_file(&a, ""), Err(FileError::Adr(AdrError::EmptyInput))));
    }
}
