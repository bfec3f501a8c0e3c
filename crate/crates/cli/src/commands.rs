//! Subcommand bodies. Each produces an [`Outcome`] that the renderer turns
//! into JSON, CSV or text.

use serde_json::{json, Value};

use domino_core::box3d::{count_3d, verify_3d};
use domino_core::genfun::{
    classify_symmetry, degree_gap, generating_function, literal_sign_claim, requires_twist,
};
use domino_core::grid::build;
use domino_core::laurent::extrapolate_laurent;
use domino_core::oracle::Oracle;
use domino_core::reciprocity::verify;
use domino_core::recurrence::{transfer_char_poly, two_sided_table, width_recurrence};
use domino_core::transfer::{count_fast_with, TransferMatrix};
use domino_core::{Limits, Result};

use crate::Command;

/// Widths up to this get the characteristic polynomial alongside the
/// minimal recurrence (matrix order 64).
const CHAR_POLY_MAX_WIDTH: usize = 6;

pub struct Outcome {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, String)>,
    pub result: Value,
    pub pass: bool,
    pub title: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn yes_no(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

fn signed(v: i8) -> String {
    if v > 0 {
        format!("+{v}")
    } else {
        v.to_string()
    }
}

pub fn run(cmd: &Command, limits: &Limits) -> Result<Outcome> {
    match *cmd {
        Command::Count { m, n } => count(m, n, limits),
        Command::Table { m, from, to } => table(m, from, to, limits),
        Command::Oracle {
            m,
            n,
            graph,
            matchings,
        } => oracle(m, n, graph, matchings, limits),
        Command::Matrix { m } => matrix(m, limits),
        Command::Recurrence { m } => recurrence(m, limits),
        Command::Genfun { m } => genfun(m, limits),
        Command::Verify { m, nmax, oracle } => reciprocity(m, nmax, oracle, limits),
        Command::Count3d { k, m, n } => count3d(k, m, n, limits),
        Command::Verify3d { k, m, nmax } => reciprocity3d(k, m, nmax, limits),
        Command::Laurent { down_to } => laurent(down_to, limits),
    }
}

fn count(m: usize, n: i64, limits: &Limits) -> Result<Outcome> {
    let value = if n >= 1 {
        count_fast_with(m, n as usize, limits)?
    } else {
        two_sided_table(m, n, 0, limits)?
            .get(n)
            .cloned()
            .expect("n in range")
    };
    let v = value.to_string();
    Ok(Outcome {
        command: "count",
        parameters: vec![("m", m.to_string()), ("n", n.to_string())],
        result: json!(v),
        pass: true,
        title: format!("T({m}, {n})"),
        header: vec!["m", "n", "value"],
        rows: vec![vec![m.to_string(), n.to_string(), v]],
    })
}

fn table(m: usize, from: i64, to: i64, limits: &Limits) -> Result<Outcome> {
    if from > to {
        return Err(domino_core::Error::InvalidArgument(format!(
            "--from {from} exceeds --to {to}"
        )));
    }
    let t = two_sided_table(m, from, to, limits)?;
    let rows: Vec<Vec<String>> = (from..=to)
        .map(|n| vec![n.to_string(), t.get(n).expect("in range").to_string()])
        .collect();
    let result = rows
        .iter()
        .map(|r| json!({ "n": r[0], "value": r[1] }))
        .collect();
    Ok(Outcome {
        command: "table",
        parameters: vec![
            ("m", m.to_string()),
            ("from", from.to_string()),
            ("to", to.to_string()),
        ],
        result: Value::Array(result),
        pass: true,
        title: format!("T({m}, n) for {from} <= n <= {to}"),
        header: vec!["n", "value"],
        rows,
    })
}

fn oracle(
    m: usize,
    n: i64,
    with_graph: bool,
    with_matchings: bool,
    limits: &Limits,
) -> Result<Outcome> {
    let grid = build(m, n)?;
    let all = Oracle::new(limits).enumerate(&grid)?;
    let positive = all.iter().filter(|x| x.sign.value() > 0).count();
    let negative = all.len() - positive;
    let total = positive as i64 - negative as i64;

    let mut result = json!({
        "count": total.to_string(),
        "positive": positive.to_string(),
        "negative": negative.to_string(),
        "vertices": grid.vertex_count().to_string(),
        "edges": grid.edges().len().to_string(),
    });
    if with_graph {
        result["graph"] = serde_json::to_value(&grid).expect("grid serializes");
    }
    if with_matchings {
        result["matchings"] = all
            .iter()
            .map(|x| json!({ "sign": x.sign, "edges": x.edges }))
            .collect();
    }
    Ok(Outcome {
        command: "oracle",
        parameters: vec![("m", m.to_string()), ("n", n.to_string())],
        result,
        pass: true,
        title: format!("signed matchings of G({m}, {n})"),
        header: vec!["m", "n", "count", "positive", "negative"],
        rows: vec![vec![
            m.to_string(),
            n.to_string(),
            total.to_string(),
            positive.to_string(),
            negative.to_string(),
        ]],
    })
}

fn matrix(m: usize, limits: &Limits) -> Result<Outcome> {
    let t = TransferMatrix::for_width(m, limits)?;
    let rows: Vec<Vec<String>> = t
        .to_decimal_rows()
        .into_iter()
        .enumerate()
        .map(|(c, row)| {
            let mut out = vec![format!("{c:0width$b}", width = m)];
            out.extend(row);
            out
        })
        .collect();
    Ok(Outcome {
        command: "matrix",
        parameters: vec![("m", m.to_string())],
        result: serde_json::to_value(&t).expect("matrix serializes"),
        pass: true,
        title: format!("transfer matrix, width {m}, order {}", t.order()),
        header: vec!["profile", "row"],
        rows,
    })
}

fn recurrence(m: usize, limits: &Limits) -> Result<Outcome> {
    let minimal = width_recurrence(m, limits)?;
    let characteristic = if m <= CHAR_POLY_MAX_WIDTH {
        Some(transfer_char_poly(&TransferMatrix::for_width(m, limits)?))
    } else {
        None
    };
    let divides = characteristic
        .as_ref()
        .map(|p| p.div_exact(&minimal.to_poly()).is_some());
    let mut rows = vec![
        vec!["minimal_degree".into(), minimal.degree().to_string()],
        vec!["minimal".into(), minimal.to_poly().to_string()],
    ];
    if let (Some(p), Some(d)) = (&characteristic, divides) {
        rows.push(vec!["characteristic".into(), p.to_string()]);
        rows.push(vec!["minimal_divides_characteristic".into(), yes_no(d)]);
    }
    Ok(Outcome {
        command: "recurrence",
        parameters: vec![("m", m.to_string())],
        result: json!({
            "minimal": minimal,
            "minimal_degree": minimal.degree().to_string(),
            "characteristic": characteristic,
            "minimal_divides_characteristic": divides,
        }),
        pass: divides.unwrap_or(true),
        title: format!("recurrences for T({m}, n), coefficients lowest degree first"),
        header: vec!["field", "value"],
        rows,
    })
}

fn genfun(m: usize, limits: &Limits) -> Result<Outcome> {
    let gf = generating_function(m, limits)?;
    let gap = degree_gap(&gf);
    let found = classify_symmetry(&gf.q);
    let twist = requires_twist(&found);
    let claim = literal_sign_claim(m, &gf.q);
    let syms: Vec<String> = found
        .iter()
        .map(|s| format!("({},{})", signed(s.s), signed(s.t)))
        .collect();
    let rows = vec![
        vec!["P".into(), gf.p.to_string()],
        vec!["Q".into(), gf.q.to_string()],
        vec!["degree_gap".into(), gap.to_string()],
        vec!["symmetries".into(), syms.join(" ")],
        vec!["requires_twist".into(), yes_no(twist)],
        vec!["literal_claim_sign".into(), signed(claim.expected_s)],
        vec!["literal_claim_holds".into(), yes_no(claim.holds)],
    ];
    let symmetries: Vec<Value> = found
        .iter()
        .map(|s| json!({ "s": signed(s.s), "t": signed(s.t) }))
        .collect();
    Ok(Outcome {
        command: "genfun",
        parameters: vec![("m", m.to_string())],
        result: json!({
            "P": gf.p,
            "Q": gf.q,
            "degree_gap": gap.to_string(),
            "symmetries": symmetries,
            "requires_twist": twist,
            "literal_claim": { "expected_s": signed(claim.expected_s), "holds": claim.holds },
        }),
        pass: true,
        title: format!("F_{m}(x) = P(x) / Q(x)"),
        header: vec!["field", "value"],
        rows,
    })
}

fn reciprocity(m: usize, nmax: usize, with_oracle: bool, limits: &Limits) -> Result<Outcome> {
    let report = verify(m, nmax, with_oracle, limits)?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.t_forward.to_string(),
                r.t_reflected.to_string(),
                signed(r.epsilon),
                r.oracle_reflected
                    .as_ref()
                    .map_or(String::new(), |v| v.to_string()),
                yes_no(r.pass),
            ]
        })
        .collect();
    Ok(Outcome {
        command: "verify",
        parameters: vec![
            ("m", m.to_string()),
            ("nmax", nmax.to_string()),
            ("oracle", yes_no(with_oracle)),
        ],
        result: serde_json::to_value(&report).expect("report serializes"),
        pass: report.pass,
        title: format!("T({m}, -2-n) = eps({m}, n) T({m}, n)"),
        header: vec![
            "n",
            "t_forward",
            "t_reflected",
            "epsilon",
            "oracle_reflected",
            "pass",
        ],
        rows,
    })
}

fn count3d(k: usize, m: usize, n: usize, limits: &Limits) -> Result<Outcome> {
    let v = count_3d(k, m, n, limits)?.to_string();
    Ok(Outcome {
        command: "count3d",
        parameters: vec![
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("n", n.to_string()),
        ],
        result: json!(v),
        pass: true,
        title: format!("T({k}, {m}, {n})"),
        header: vec!["k", "m", "n", "value"],
        rows: vec![vec![k.to_string(), m.to_string(), n.to_string(), v]],
    })
}

fn reciprocity3d(k: usize, m: usize, nmax: usize, limits: &Limits) -> Result<Outcome> {
    let report = verify_3d(k, m, nmax, limits)?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.t_forward.to_string(),
                r.t_reflected.to_string(),
                if r.sign == 0 {
                    "0".into()
                } else {
                    signed(r.sign)
                },
                yes_no(r.pass),
            ]
        })
        .collect();
    Ok(Outcome {
        command: "verify3d",
        parameters: vec![
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("nmax", nmax.to_string()),
        ],
        result: serde_json::to_value(&report).expect("report serializes"),
        pass: report.pass,
        title: format!("|T({k}, {m}, -2-n)| = |T({k}, {m}, n)|, observed sign"),
        header: vec!["n", "t_forward", "t_reflected", "sign", "pass"],
        rows,
    })
}

fn laurent(down_to: i64, limits: &Limits) -> Result<Outcome> {
    let polys = extrapolate_laurent(down_to, limits)?;
    let counts = two_sided_table(2, down_to, 3, limits)?;
    let mut pass = true;
    let mut rows = Vec::new();
    let mut result = Vec::new();
    for (&n, p) in &polys {
        let at_ones = p.eval_ones();
        let matches = Some(&at_ones) == counts.get(n);
        let unit = p.all_coefficients_unit();
        pass &= matches && (n > 0 || unit);
        rows.push(vec![
            n.to_string(),
            at_ones.to_string(),
            p.len().to_string(),
            yes_no(unit),
            p.to_string(),
        ]);
        result.push(json!({
            "n": n.to_string(),
            "at_ones": at_ones.to_string(),
            "unit_coefficients": unit,
            "terms": p,
        }));
    }
    Ok(Outcome {
        command: "laurent",
        parameters: vec![("down_to", down_to.to_string())],
        result: Value::Array(result),
        pass,
        title: format!("M(G(2, n)) for {down_to} <= n <= 3"),
        header: vec!["n", "at_ones", "terms", "unit_coefficients", "polynomial"],
        rows,
    })
}
