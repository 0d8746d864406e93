//! Loading algebras, module specifications and complex files.
//!
//! Module specifications are `projective <v>`, `simple <v>`, `interval <a> <b>`, or the path of
//! a module file:
//!
//! ```text
//! dim 1 2                      # dimension at a vertex; omitted vertices are 0
//! dim 2 1
//! matrix a: 1; 0               # rows separated by `;`, shape dim(source) x dim(target)
//! ```
//!
//! A complex file lists summands; each term is a sum of indecomposable projectives and each map
//! entry is a combination of paths (`e_<v>` for a lazy path) from the column's vertex to the
//! row's vertex:
//!
//! ```text
//! summand T2
//! term 0: 1
//! term 1: 2
//! map 0: 1 1 a1                # degree, row in term 1, column in term 0, combination
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use qtilt::algebra::BasicAlgebra;
use qtilt::builtin;
use qtilt::complexes::Complex;
use qtilt::modrep::{left_multiplication_map, ModuleMap, Representation};
use qtilt::repclass::interval;
use qtilt::scalars::{ExactField, Matrix, Scalar};
use qtilt::tilting::{example_tilting, example_tilting_corrupted, TiltingCandidate};

use crate::error::{CliError, CliResult};
use crate::format::{parse_combination, term_path, QuiverFile};

pub const R_FILE: &str = include_str!("../data/R.quiver");
pub const S_FILE: &str = include_str!("../data/S.quiver");
pub const T_FILE: &str = include_str!("../data/T.complex");

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// `builtin:R`, `builtin:S`, or a quiver file path.
pub fn load_algebra(spec: &str, field: Option<ExactField>) -> CliResult<Arc<BasicAlgebra>> {
    let text = match spec {
        "builtin:R" => R_FILE.to_string(),
        "builtin:S" => S_FILE.to_string(),
        path => read(path)?,
    };
    Ok(Arc::new(QuiverFile::parse(&text)?.algebra(field)?))
}

fn vertex(a: &BasicAlgebra, name: &str) -> CliResult<usize> {
    Ok(a.quiver().vertex(name)?)
}

pub fn parse_module(a: &Arc<BasicAlgebra>, spec: &str) -> CliResult<Representation> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    match words.as_slice() {
        ["projective", v] => Ok(Representation::projective(a.clone(), vertex(a, v)?)),
        ["simple", v] => Ok(Representation::simple(a.clone(), vertex(a, v)?)),
        ["interval", x, y] => Ok(interval(a, vertex(a, x)?, vertex(a, y)?)?.module),
        [path] => parse_module_file(a, &read(path)?),
        _ => Err(CliError::Usage(format!("cannot read module specification `{spec}`"))),
    }
}

pub fn parse_module_file(a: &Arc<BasicAlgebra>, text: &str) -> CliResult<Representation> {
    let q = a.quiver();
    let f = a.field();
    let mut dims = vec![0; q.num_vertices()];
    let mut matrices: BTreeMap<usize, (usize, Vec<Vec<Scalar>>)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| CliError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match keyword {
            "dim" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [v, n] = parts.as_slice() else { return Err(err("expected `dim <vertex> <n>`".into())) };
                let v = q.vertex(v).map_err(|e| err(e.to_string()))?;
                dims[v] = n.parse().map_err(|_| err(format!("invalid dimension `{n}`")))?;
            }
            "matrix" => {
                let (name, body) = rest.split_once(':').ok_or_else(|| err("expected `matrix <arrow>: rows`".into()))?;
                let k = q.arrow_index(name.trim()).map_err(|e| err(e.to_string()))?;
                let rows = body
                    .split(';')
                    .map(|row| {
                        row.split_whitespace()
                            .map(|x| Scalar::parse(f, x).ok_or_else(|| err(format!("invalid entry `{x}`"))))
                            .collect::<CliResult<Vec<_>>>()
                    })
                    .filter(|r| !matches!(r, Ok(v) if v.is_empty()))
                    .collect::<CliResult<Vec<_>>>()?;
                matrices.insert(k, (line, rows));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let actions = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arrow)| {
            let (r, c) = (dims[arrow.source], dims[arrow.target]);
            match matrices.remove(&k) {
                None => Ok(Matrix::zeros(f, r, c)),
                Some((line, rows)) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(CliError::Parse {
                            line,
                            message: format!("matrix of `{}` must be {r}x{c}", arrow.name),
                        });
                    }
                    Ok(Matrix::from_fn(f, r, c, |i, j| rows[i][j].clone()))
                }
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Representation::new(a.clone(), dims, actions)?)
}

/// An element of `e_j A e_i` written as a combination of paths `i -> j`.
fn parse_element(a: &BasicAlgebra, i: usize, j: usize, text: &str) -> Result<Vec<Scalar>, String> {
    let q = a.quiver();
    let mut x = vec![a.field().zero(); a.dim()];
    for term in parse_combination(text)? {
        let path = match term.arrows.as_slice() {
            [name] if q.arrow_index(name).is_err() && name.starts_with("e_") => {
                let v = q.vertex(&name[2..]).map_err(|e| e.to_string())?;
                q.lazy(v)
            }
            _ => term_path(q, &term.arrows).map_err(|e| e.to_string())?,
        };
        if path.source != i || path.target != j {
            return Err(format!(
                "path {} does not go from {} to {}",
                q.product_notation(&path),
                q.vertex_name(i),
                q.vertex_name(j)
            ));
        }
        let y = a.element_of_path(&path);
        let c = a.field().from_i64(term.coefficient);
        for (xi, yi) in x.iter_mut().zip(y) {
            *xi = &*xi + &(&c * &yi);
        }
    }
    Ok(x)
}

#[derive(Default)]
struct SummandSpec {
    label: String,
    terms: BTreeMap<i32, Vec<usize>>,
    maps: Vec<(usize, i32, usize, usize, Vec<Scalar>)>,
}

/// Reads a complex file into a candidate.
pub fn parse_complex_file(a: &Arc<BasicAlgebra>, text: &str) -> CliResult<TiltingCandidate> {
    let q = a.quiver();
    let mut specs: Vec<SummandSpec> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| CliError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if keyword == "summand" {
            specs.push(SummandSpec { label: rest.to_string(), ..Default::default() });
            continue;
        }
        let current = specs.last_mut().ok_or_else(|| err("expected `summand <label>` first".into()))?;
        let (deg, body) = rest.split_once(':').ok_or_else(|| err(format!("expected `{keyword} <degree>: ...`")))?;
        let deg: i32 = deg.trim().parse().map_err(|_| err(format!("invalid degree `{}`", deg.trim())))?;
        match keyword {
            "term" => {
                let vs = body
                    .split_whitespace()
                    .map(|v| q.vertex(v).map_err(|e| err(e.to_string())))
                    .collect::<CliResult<Vec<_>>>()?;
                current.terms.insert(deg, vs);
            }
            "map" => {
                let mut parts = body.trim().splitn(3, char::is_whitespace);
                let mut index = |what: &str| -> CliResult<usize> {
                    let s = parts.next().unwrap_or("");
                    s.parse::<usize>()
                        .ok()
                        .filter(|&k| k >= 1)
                        .map(|k| k - 1)
                        .ok_or_else(|| err(format!("invalid {what} index `{s}`")))
                };
                let (row, col) = (index("row")?, index("column")?);
                let combo = parts.next().unwrap_or("");
                let (Some(src), Some(tgt)) = (current.terms.get(&deg), current.terms.get(&(deg + 1))) else {
                    return Err(err(format!("map {deg} needs terms {deg} and {} declared first", deg + 1)));
                };
                let (Some(&i), Some(&j)) = (src.get(col), tgt.get(row)) else {
                    return Err(err("map entry outside the terms".into()));
                };
                let x = parse_element(a, i, j, combo).map_err(err)?;
                current.maps.push((line, deg, row, col, x));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    if specs.is_empty() {
        return Err(CliError::Parse { line: 0, message: "no summands".into() });
    }
    let mut summands = Vec::new();
    let mut labels = Vec::new();
    for spec in specs {
        summands.push(build_complex(a, &spec)?);
        labels.push(spec.label);
    }
    let mut t = TiltingCandidate::new(a.clone(), summands)?;
    t.labels = labels;
    Ok(t)
}

fn build_complex(a: &Arc<BasicAlgebra>, spec: &SummandSpec) -> CliResult<Complex> {
    let (Some(&lo), Some(&hi)) = (spec.terms.keys().next(), spec.terms.keys().last()) else {
        return Ok(Complex::zero(a.clone()));
    };
    let sums: Vec<_> = (lo..=hi)
        .map(|d| {
            let parts: Vec<Representation> = spec
                .terms
                .get(&d)
                .map(|vs| vs.iter().map(|&v| Representation::projective(a.clone(), v)).collect())
                .unwrap_or_default();
            let refs: Vec<&Representation> = parts.iter().collect();
            (Representation::direct_sum(a.clone(), &refs), parts)
        })
        .collect();
    let mut differentials = Vec::new();
    for d in lo..hi {
        let k = (d - lo) as usize;
        let (src, tgt) = (&sums[k].0, &sums[k + 1].0);
        let mut f: ModuleMap = src.module.zero_map_to(&tgt.module);
        for (_, deg, row, col, x) in &spec.maps {
            if *deg != d {
                continue;
            }
            let (i, j) = (spec.terms[&d][*col], spec.terms[&(d + 1)][*row]);
            let piece = left_multiplication_map(a, i, j, x);
            f = f.add(&tgt.injections[*row].compose(&piece).compose(&src.projections[*col]));
        }
        differentials.push(f);
    }
    if let Some((line, deg, ..)) = spec.maps.iter().find(|m| m.1 < lo || m.1 >= hi) {
        return Err(CliError::Parse { line: *line, message: format!("map {deg} is outside the complex") });
    }
    let objects = sums.into_iter().map(|(s, _)| s.module).collect();
    Complex::new(a.clone(), lo, objects, differentials)
        .map_err(|e| CliError::Usage(format!("summand {}: {e}", spec.label)))
}

/// `builtin:T`, `builtin:T-corrupted`, `builtin:regular`, or a complex file path.
pub fn load_candidate(a: &Arc<BasicAlgebra>, spec: &str) -> CliResult<TiltingCandidate> {
    match spec {
        "builtin:T" => Ok(example_tilting(a)?),
        "builtin:T-corrupted" => Ok(example_tilting_corrupted(a)?),
        "builtin:regular" => Ok(TiltingCandidate::regular(a.clone())),
        path => parse_complex_file(a, &read(path)?),
    }
}

/// True when `a` is the built-in `R` over its field.
pub fn is_builtin_r(a: &BasicAlgebra) -> bool {
    *a == builtin::algebra_r(a.field())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Arc<BasicAlgebra> {
        load_algebra("builtin:R", Some(ExactField::Rationals)).unwrap()
    }

    #[test]
    fn data_files_are_the_builtin_algebras() {
        for f in [ExactField::Rationals, ExactField::Prime(101), ExactField::Prime(2)] {
            assert_eq!(*load_algebra("builtin:R", Some(f)).unwrap(), builtin::algebra_r(f));
            assert_eq!(*load_algebra("builtin:S", Some(f)).unwrap(), builtin::algebra_s(f));
        }
    }

    #[test]
    fn complex_file_matches_builtin_candidate() {
        let r = r();
        let from_file = parse_complex_file(&r, T_FILE).unwrap();
        let built = example_tilting(&r).unwrap();
        assert_eq!(from_file.summands, built.summands);
        assert_eq!(from_file.labels, built.labels);
    }

    #[test]
    fn module_specs() {
        let r = r();
        assert_eq!(parse_module(&r, "projective 8").unwrap().dim(), 8);
        assert_eq!(parse_module(&r, "simple 3").unwrap().dim(), 1);
        assert_eq!(parse_module(&r, "interval 2 4").unwrap().dims(), &[0, 1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let m = parse_module_file(&r, "dim 1 1\ndim 2 1\nmatrix a1: 1\n").unwrap();
        assert_eq!(m.dims()[..2], [1, 1]);
        let bad = "dim 1 1\ndim 2 1\ndim 3 1\ndim 4 1\ndim 5 1\ndim 6 1\ndim 7 1\ndim 8 1\ndim 9 1\n\
                   matrix a1: 1\nmatrix a2: 1\nmatrix a3: 1\nmatrix a4: 1\nmatrix a5: 1\nmatrix a6: 1\nmatrix a7: 1\nmatrix a8: 1\n";
        assert!(matches!(parse_module_file(&r, bad), Err(CliError::Core(qtilt::Error::InvalidRepresentation(_)))));
        assert!(matches!(
            parse_module_file(&r, "dim 1 1\ndim 2 1\nmatrix a1: 1 1\n"),
            Err(CliError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn complex_file_errors() {
        let r = r();
        assert!(matches!(parse_complex_file(&r, "term 0: 1"), Err(CliError::Parse { line: 1, .. })));
        let not_complex = "summand X\nterm 0: 1\nterm 1: 2\nterm 2: 3\nmap 0: 1 1 a1\nmap 1: 1 1 a2\n";
        assert!(parse_complex_file(&r, not_complex).is_err());
        let wrong_path = "summand X\nterm 0: 1\nterm 1: 3\nmap 0: 1 1 a1\n";
        assert!(matches!(parse_complex_file(&r, wrong_path), Err(CliError::Parse { line: 4, .. })));
    }
}
