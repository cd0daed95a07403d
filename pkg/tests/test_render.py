import xml.etree.ElementTree as ET

from helpers import U, ndoc

from lexatlas import (
    BuildConfig,
    FilterConfig,
    Mode,
    SemanticMap,
    build_map,
    cluster_map_rows,
    coords_tsv,
    corpus_stats,
    extract_sentence,
    render_svg,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def _map(rows):
    docs = [ndoc(rows)]
    stats = corpus_stats(extract_sentence(docs), docs)
    cfg = BuildConfig(
        mode=Mode.SENTENCE,
        filter=FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=2, reciprocal_filter=True),
    )
    return build_map(U("w"), stats, cfg)


def two_sense_map():
    return _map([["w", "b", "c"]] * 3 + [["w", "x", "y"]] * 3)


def three_sense_map():
    rows = [["w", "b", "c"]] * 3 + [["w", "x", "y"]] * 3 + [["w", "p", "q"]] * 3
    return _map(rows)


class TestRenderSvg:
    def test_parses_as_xml(self):
        svg = render_svg(two_sense_map())
        root = ET.fromstring(svg)
        assert root.tag == f"{SVG_NS}svg"
        assert root.get("width") == "900"

    def test_one_circle_per_clique(self):
        m = two_sense_map()
        root = ET.fromstring(render_svg(m))
        circles = root.findall(f"{SVG_NS}circle")
        assert len(circles) == len(m.cliques)

    def test_header_and_axis_share_text(self):
        m = two_sense_map()
        svg = render_svg(m)
        assert "w/X" in svg
        assert f"{len(m.cliques)} cliques" in svg
        assert "axis 1" in svg and "axis 2" in svg

    def test_labels_present_and_escaped(self):
        m = _map([["w", "a&b", "c"]] * 3 + [["w", "x", "y"]] * 3)
        svg = render_svg(m)
        assert "a&amp;b" in svg
        root = ET.fromstring(svg)
        texts = [t.text for t in root.iter(f"{SVG_NS}text")]
        assert "c" in texts

    def test_two_point_cluster_draws_line(self):
        m = three_sense_map()
        merged_two = cluster_map_rows(m.ca, m.cliques, linkage_threshold=1.0)
        # force one 3-clique cluster: its hull is a polygon
        forced = SemanticMap(m.headword, m.cliques, m.ca, merged_two, m.capped)
        root = ET.fromstring(render_svg(forced))
        assert root.findall(f"{SVG_NS}polygon") or root.findall(f"{SVG_NS}line")

    def test_separated_clusters_have_no_polygon(self):
        m = two_sense_map()
        root = ET.fromstring(render_svg(m))
        # singleton clusters hull to a point: neither polygon nor line
        assert not root.findall(f"{SVG_NS}polygon")
        assert not root.findall(f"{SVG_NS}line")

    def test_degenerate_axis_is_widened(self):
        m = two_sense_map()  # K = 1, axis 2 all zeros
        svg = render_svg(m, 1, 2)
        assert "nan" not in svg.lower()
        ET.fromstring(svg)

    def test_axes_beyond_k(self):
        svg = render_svg(two_sense_map(), 1, 5)
        assert "axis 5 (0.0%)" in svg


class TestCoordsTsv:
    def test_shape_and_content(self):
        m = two_sense_map()
        out = coords_tsv(m)
        lines = out.splitlines()
        assert lines[0].startswith("# headword=w/X axes=1,2")
        assert lines[1] == "type\tid\tx\ty\tdetail"
        body = lines[2:]
        assert len(body) == len(m.cliques) + len(m.ca.col_units)
        clique_rows = [l for l in body if l.startswith("clique\t")]
        assert len(clique_rows) == len(m.cliques)
        first = clique_rows[0].split("\t")
        assert "|" in first[4]

    def test_floats_round_trip_exactly(self):
        m = two_sense_map()
        for line in coords_tsv(m).splitlines()[2:]:
            _type, _id, x, y, _detail = line.split("\t")
            assert repr(float(x)) == x
            assert repr(float(y)) == y

    def test_axis_selection_changes_values(self):
        m = three_sense_map()  # K = 2
        t12 = coords_tsv(m, 1, 2)
        t21 = coords_tsv(m, 2, 1)
        assert t12 != t21
        assert "axes=2,1" in t21.splitlines()[0]
