use serde::Serialize;
use serde_json::{Map, Value};

use crate::commands::Outcome;
use crate::Format;

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    parameters: Map<String, Value>,
    result: &'a Value,
    status: &'a str,
}

fn status(o: &Outcome) -> &'static str {
    if o.pass {
        "ok"
    } else {
        "fail"
    }
}

pub fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => json(o),
        Format::Csv => csv(o),
        Format::Text => text(o),
    }
}

fn json(o: &Outcome) -> String {
    let parameters = o
        .parameters
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect();
    let env = Envelope {
        command: o.command,
        parameters,
        result: &o.result,
        status: status(o),
    };
    let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
    s.push('\n');
    s
}

fn csv(o: &Outcome) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&o.header).expect("in-memory write");
    for row in &o.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn text(o: &Outcome) -> String {
    let cols = o.header.len();
    let mut widths: Vec<usize> = o.header.iter().map(|h| h.len()).collect();
    for row in &o.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let parts: Vec<String> = cells
            .enumerate()
            // last column left-aligned and unpadded (it may hold long polynomials)
            .map(|(i, c)| {
                if i + 1 == cols {
                    c.to_string()
                } else {
                    format!("{c:<w$}", w = widths[i])
                }
            })
            .collect();
        parts.join("  ")
    };
    let mut out = format!("{}\n", o.title);
    out += &line(&mut o.header.iter().copied());
    out.push('\n');
    for row in &o.rows {
        out += &line(&mut row.iter().map(String::as_str));
        out.push('\n');
    }
    out += &format!("status: {}\n", status(o));
    out
}
