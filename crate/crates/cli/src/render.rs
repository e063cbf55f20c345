use std::fmt::Write;

use lipeq::ifscore::{canonical_dust, Ifs, IfsSpec, Similarity};

const MARGIN: f64 = 20.0;
const ROW: f64 = 12.0;
const ROW_GAP: f64 = 10.0;
const TITLE: f64 = 18.0;
const MAX_BARS: usize = 200_000;

fn panel(out: &mut String, spec: &IfsSpec, title: &str, levels: usize, x0: f64, width: f64) {
    let _ = writeln!(out, r#"  <g class="panel" data-title="{title}">"#);
    let _ = writeln!(
        out,
        r#"    <text x="{:.4}" y="{:.4}" font-family="sans-serif" font-size="12">{title}</text>"#,
        x0,
        MARGIN + 12.0
    );
    let mut row = vec![Similarity::identity()];
    for level in 0..=levels {
        let y = MARGIN + TITLE + level as f64 * (ROW + ROW_GAP);
        let _ = writeln!(out, r#"    <g class="level" data-level="{level}">"#);
        for m in &row {
            let lo = m.offset.clone();
            let hi = &m.offset + &m.scale;
            let (a, b) = (x0 + lo.to_f64() * width, x0 + hi.to_f64() * width);
            let _ = writeln!(
                out,
                r#"      <rect x="{a:.4}" y="{y:.4}" width="{:.4}" height="{ROW:.4}" data-lo="{lo}" data-hi="{hi}"/>"#,
                b - a
            );
        }
        let _ = writeln!(out, "    </g>");
        if level < levels {
            row = row
                .iter()
                .flat_map(|m| (1..=spec.n()).map(move |l| m.compose(spec.map(l))))
                .collect();
        }
    }
    let _ = writeln!(out, "  </g>");
}

/// Bars for every cylinder of levels `0..=levels`, positioned to scale.
pub fn svg(ifs: &Ifs, levels: usize, width: u32, with_dust: bool) -> Result<String, String> {
    let n = ifs.n();
    let bars: usize = (0..=levels).map(|l| n.saturating_pow(l as u32)).fold(0, usize::saturating_add);
    if bars > MAX_BARS {
        return Err(format!("{levels} levels need {bars} bars, more than {MAX_BARS}"));
    }
    let w = f64::from(width.max(1));
    let panels = if with_dust { 2.0 } else { 1.0 };
    let total_w = panels * w + (panels + 1.0) * MARGIN;
    let total_h = 2.0 * MARGIN + TITLE + (levels as f64 + 1.0) * (ROW + ROW_GAP) - ROW_GAP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w:.4}" height="{total_h:.4}" viewBox="0 0 {total_w:.4} {total_h:.4}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"  <g fill="black" stroke="none">"#);
    let title = match ifs.spec.role() {
        lipeq::ifscore::Role::Touching => "T",
        lipeq::ifscore::Role::Dust => "D",
    };
    panel(&mut out, &ifs.spec, title, levels, MARGIN, w);
    if with_dust {
        let dust = canonical_dust(ifs.spec.ratios()).map_err(|e| e.to_string())?;
        panel(&mut out, &dust, "D", levels, 2.0 * MARGIN + w, w);
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    Ok(out)
}
