//! Gnuplot scripts for figure tables. They are written, never run.

use discord_core::scenarios::figures::Panel;

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Script plotting `csv` (a figure table with its two header lines).
pub fn gnuplot_script(figure: u8, panel: Panel, csv: &str) -> String {
    let file = quote(csv);
    let mut s = format!("# figure {figure}({panel}), data in {csv}\nset datafile separator ','\nset key top right\n");
    if panel == Panel::C {
        s.push_str("set xlabel 'c_y'\nset ylabel 'a t_c'\n");
        s.push_str(&format!("plot {file} skip 2 using 1:2 with lines lw 2 title 'a t_c'\n"));
        return s;
    }
    s.push_str("set xlabel 'a t'\nset ylabel 'correlations (bits)'\n");
    // solid: memory kernel; dashed: Markovian baseline
    let curves = [(4, 1, "C"), (5, 1, "D"), (6, 2, "C, Markovian"), (7, 2, "D, Markovian")];
    let lines: Vec<String> = curves
        .iter()
        .map(|(col, dt, title)| format!("{file} skip 2 using 1:{col} with lines lw 2 dt {dt} title '{title}'"))
        .collect();
    s.push_str(&format!("plot {}\n", lines.join(", \\\n     ")));
    s
}
