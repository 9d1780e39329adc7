//! CSV, DOT and SVG writers.

use std::fmt::Write as _;
use std::io::Write;

use bibnet_core::mds::Embedding;
use bibnet_core::stats::{RankingResult, ResidualMatrix};

/// Shortest round-trip formatting; empty for a missing value.
pub fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub fn residuals_csv<W: Write>(rm: &ResidualMatrix, w: W) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["measure", "database", "residual", "rank", "flagged", "critical"])?;
    for col in &rm.columns {
        for (i, db) in rm.databases.iter().enumerate() {
            out.write_record([
                col.measure.as_str(),
                db,
                &num(col.residuals[i]),
                &col.ranks[i].to_string(),
                if col.flags[i] { "true" } else { "false" },
                &num(Some(col.critical)),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn ranking_csv<W: Write>(r: &RankingResult, w: W) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["position", "database", "mean_rank"])?;
    for (pos, i) in r.order().into_iter().enumerate() {
        out.write_record([
            (pos + 1).to_string(),
            r.databases[i].clone(),
            num(Some(r.mean_ranks[i])),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn groups_csv<W: Write>(r: &RankingResult, w: W) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["group", "database", "mean_rank"])?;
    for (g, members) in r.groups.iter().enumerate() {
        for &i in members {
            out.write_record([
                (g + 1).to_string(),
                r.databases[i].clone(),
                num(Some(r.mean_ranks[i])),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// One row per object; the stress goes into a leading comment line.
pub fn embedding_csv<W: Write>(names: &[String], e: &Embedding, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# stress={}", e.stress)?;
    let axes = ["x", "y", "z"];
    let p = e.coordinates.first().map_or(0, |r| r.len());
    let mut out = csv_writer(w);
    let mut header = vec!["database"];
    header.extend(&axes[..p]);
    out.write_record(&header)?;
    for (name, row) in names.iter().zip(&e.coordinates) {
        let mut rec = vec![name.clone()];
        rec.extend(row.iter().map(|v| num(Some(*v))));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of a labelled link list.
pub fn dot(name: &str, directed: bool, labels: &[&str], links: &[(&str, &str)]) -> String {
    let (kind, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
    let mut s = String::new();
    let _ = writeln!(s, "{kind} {} {{", dot_id(name));
    for l in labels {
        let _ = writeln!(s, "  {};", dot_id(l));
    }
    for (u, v) in links {
        let _ = writeln!(s, "  {} {arrow} {};", dot_id(u), dot_id(v));
    }
    s.push_str("}\n");
    s
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Critical-difference diagram: mean ranks on an axis running from 1
/// (left) to N, a CD bar, and a bold line under each group.
pub fn cd_svg(title: &str, r: &RankingResult) -> String {
    let n = r.databases.len().max(2);
    let (left, right, width) = (60.0, 540.0, 600.0);
    let axis_y = 80.0;
    let x = |rank: f64| left + (rank - 1.0) / (n as f64 - 1.0) * (right - left);
    let order = r.order();
    let label_rows = order.len();
    let group_top = axis_y + 20.0;
    let labels_top = group_top + 10.0 * r.groups.len() as f64 + 20.0;
    let height = labels_top + 18.0 * label_rows as f64 + 20.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<text x="{}" y="18" text-anchor="middle" font-weight="bold">{}</text>"#, width / 2.0, esc(title));
    if r.not_significant {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="34" text-anchor="middle" fill="firebrick">no significant inconsistencies (Friedman test)</text>"#,
            width / 2.0
        );
    }
    // CD bar
    let cd_end = x(1.0 + r.critical_difference).min(right);
    let _ = writeln!(s, r#"<line x1="{left}" y1="48" x2="{cd_end}" y2="48" stroke="black" stroke-width="2"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="44" text-anchor="middle">CD = {:.4}</text>"#, (left + cd_end) / 2.0, r.critical_difference);
    // axis
    let _ = writeln!(s, r#"<line x1="{left}" y1="{axis_y}" x2="{right}" y2="{axis_y}" stroke="black"/>"#);
    for t in 1..=n {
        let tx = x(t as f64);
        let _ = writeln!(s, r#"<line x1="{tx}" y1="{}" x2="{tx}" y2="{axis_y}" stroke="black"/>"#, axis_y - 5.0);
        let _ = writeln!(s, r#"<text x="{tx}" y="{}" text-anchor="middle">{t}</text>"#, axis_y - 8.0);
    }
    for (gi, g) in r.groups.iter().enumerate() {
        let lo = g.iter().map(|&i| r.mean_ranks[i]).fold(f64::INFINITY, f64::min);
        let hi = g.iter().map(|&i| r.mean_ranks[i]).fold(f64::NEG_INFINITY, f64::max);
        let gy = group_top + 10.0 * gi as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{gy}" x2="{}" y2="{gy}" stroke="black" stroke-width="4"/>"#,
            x(lo) - 3.0,
            x(hi) + 3.0
        );
    }
    for (row, &i) in order.iter().enumerate() {
        let px = x(r.mean_ranks[i]);
        let ly = labels_top + 18.0 * row as f64;
        let _ = writeln!(s, r#"<line x1="{px}" y1="{axis_y}" x2="{px}" y2="{ly}" stroke="gray"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{} ({:.3})</text>"#,
            px + 4.0,
            ly + 4.0,
            esc(&r.databases[i]),
            r.mean_ranks[i]
        );
    }
    s.push_str("</svg>\n");
    s
}
