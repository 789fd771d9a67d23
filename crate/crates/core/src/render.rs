//! ASCII lattice pictures: x to the right, y down the page.

use crate::polyring::LaurentPoly;

/// Grid over the bounding box of the support and the origin; `X` marks a
/// term, `.` an empty cell. The zero polynomial renders as `(empty)`.
pub fn render_ascii(p: &LaurentPoly) -> String {
    let Some((x0, y0, x1, y1)) = p.bounding_box() else {
        return "(empty)".into();
    };
    let (x0, y0, x1, y1) = (x0.min(0), y0.min(0), x1.max(0), y1.max(0));
    (y0..=y1)
        .map(|y| {
            (x0..=x1)
                .map(|x| if p.contains((x, y).into()) { 'X' } else { '.' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// [`render_ascii`] followed by a line locating the origin.
pub fn render_ascii_with_legend(p: &LaurentPoly) -> String {
    let grid = render_ascii(p);
    let Some((x0, y0, _, _)) = p.bounding_box() else {
        return grid;
    };
    format!(
        "{grid}\norigin at column {}, row {} (x right, y down)",
        -x0.min(0),
        -y0.min(0)
    )
}
