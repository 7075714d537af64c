//! File formats: expression matrices as TSV, bicluster sets as JSON or the
//! plain-text ground-truth dialect.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use evobic::{Bicluster, BiclusterSet, ExpressionMatrix};
use serde::Serialize;

use crate::error::{CliError, Result};

fn open(path: &Path) -> Result<fs::File> {
    fs::File::open(path).map_err(|e| CliError::io(path, e))
}

fn create(path: &Path) -> Result<fs::File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::File::create(path).map_err(|e| CliError::io(path, e))
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    create(path)?.write_all(contents).map_err(|e| CliError::io(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::format(path, e.to_string()))?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

/// Reads a tab-separated matrix: the first line holds column labels (after
/// an ignored corner cell), every other line a row label followed by values.
pub fn parse_matrix_tsv(path: &Path) -> Result<ExpressionMatrix> {
    read_matrix_tsv(open(path)?, path)
}

/// [`parse_matrix_tsv`] over any reader; `path` is only used in messages.
pub fn read_matrix_tsv(reader: impl Read, path: &Path) -> Result<ExpressionMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .from_reader(reader);
    let parse_err = |line: u64, column: usize, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };

    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| csv_error(path, e))?,
        None => return Err(CliError::format(path, "empty matrix file")),
    };
    if header.len() < 2 {
        return Err(parse_err(
            1,
            1,
            "header needs a corner cell and at least one column label".into(),
        ));
    }
    let col_labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let cols = col_labels.len();

    let mut row_labels = Vec::new();
    let mut values = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != cols + 1 {
            return Err(parse_err(
                line,
                rec.len().min(cols + 1) + 1,
                format!(
                    "expected {} fields (label + {cols} values), found {}",
                    cols + 1,
                    rec.len()
                ),
            ));
        }
        row_labels.push(rec[0].to_owned());
        for (k, field) in rec.iter().enumerate().skip(1) {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| parse_err(line, k + 1, format!("not a number: {field:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(line, k + 1, format!("non-finite value {field:?}")));
            }
            values.push(v);
        }
    }
    if row_labels.is_empty() {
        return Err(CliError::format(path, "matrix has no data rows"));
    }
    ExpressionMatrix::new(row_labels.len(), cols, values, row_labels, col_labels)
        .map_err(|e| CliError::format(path, e.to_string()))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.position() {
        Some(pos) => CliError::Parse {
            path: path.to_path_buf(),
            line: pos.line(),
            column: 1,
            message: e.to_string(),
        },
        None => CliError::format(path, e.to_string()),
    }
}

/// Writes the TSV format read by [`parse_matrix_tsv`]. Values use the
/// shortest representation that parses back to the same `f64`.
pub fn write_matrix_tsv(path: &Path, m: &ExpressionMatrix) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(std::io::BufWriter::new(create(path)?));
    let to_err = |e: csv::Error| CliError::format(path, e.to_string());
    w.write_record(std::iter::once("gene").chain(m.col_labels().iter().map(String::as_str)))
        .map_err(to_err)?;
    for r in 0..m.rows() {
        let fields = std::iter::once(m.row_labels()[r].clone())
            .chain(m.row(r).iter().map(|v| v.to_string()));
        w.write_record(fields).map_err(to_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Canonical compact JSON, `{"biclusters":[{"rows":[..],"cols":[..]}]}`,
/// with sorted indices and a trailing newline.
pub fn biclusters_to_json(set: &BiclusterSet) -> String {
    let mut s = serde_json::to_string(set).expect("bicluster sets always serialize");
    s.push('\n');
    s
}

pub fn write_biclusters(path: &Path, set: &BiclusterSet) -> Result<()> {
    write_file(path, biclusters_to_json(set).as_bytes())
}

/// Reads a bicluster set from JSON, or from the text dialect when the file
/// does not start with `{`.
pub fn parse_biclusters(path: &Path) -> Result<BiclusterSet> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text).map_err(|e| CliError::io(path, e))?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.line() as u64,
            column: e.column(),
            message: e.to_string(),
        })
    } else {
        parse_bicluster_text(text.as_bytes(), path)
    }
}

/// [`parse_biclusters`] plus a bounds check against a `rows × cols` matrix.
pub fn parse_biclusters_within(path: &Path, rows: usize, cols: usize) -> Result<BiclusterSet> {
    let set = parse_biclusters(path)?;
    set.check_bounds(rows, cols).map_err(|e| CliError::format(path, e.to_string()))?;
    Ok(set)
}

/// Text dialect: one bicluster per stanza of `rows: i i i` and `cols: j j j`
/// lines. Stanzas are separated by blank lines or simply by the next
/// `rows:` line; `#` starts a comment.
pub fn parse_bicluster_text(reader: impl Read, path: &Path) -> Result<BiclusterSet> {
    let mut out = Vec::new();
    let mut rows: Option<Vec<usize>> = None;
    let mut cols: Option<Vec<usize>> = None;
    let mut stanza_line = 0;

    let mut flush = |rows: &mut Option<Vec<usize>>, cols: &mut Option<Vec<usize>>, line: u64| match (
        rows.take(),
        cols.take(),
    ) {
        (None, None) => Ok(()),
        (Some(r), Some(c)) => {
            let b = Bicluster::new(r, c).map_err(|e| CliError::Parse {
                path: path.to_path_buf(),
                line,
                column: 1,
                message: e.to_string(),
            })?;
            out.push(b);
            Ok(())
        }
        _ => Err(CliError::Parse {
            path: path.to_path_buf(),
            line,
            column: 1,
            message: "stanza needs both a rows: and a cols: line".into(),
        }),
    };

    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|e| CliError::io(path, e))?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            flush(&mut rows, &mut cols, stanza_line)?;
            continue;
        }
        let Some((key, list)) = content.split_once(':') else {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: line_no,
                column: 1,
                message: format!("expected `rows:` or `cols:`, found {content:?}"),
            });
        };
        let indices = list
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| CliError::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    column: line.find(tok).map_or(1, |p| p + 1),
                    message: format!("not an index: {tok:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        let key = key.trim().to_ascii_lowercase();
        if key == "rows" && rows.is_some() {
            flush(&mut rows, &mut cols, stanza_line)?;
        }
        if rows.is_none() && cols.is_none() {
            stanza_line = line_no;
        }
        let slot = match key.as_str() {
            "rows" => &mut rows,
            "cols" => &mut cols,
            other => {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    column: 1,
                    message: format!("unknown key {other:?}"),
                })
            }
        };
        if slot.is_some() {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: line_no,
                column: 1,
                message: format!("repeated {key} line in one stanza"),
            });
        }
        *slot = Some(indices);
    }
    flush(&mut rows, &mut cols, stanza_line)?;
    Ok(out.into())
}
