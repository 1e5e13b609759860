from kfarey.cliques import bounds_table, lower_bound_from_construction
from kfarey.levelgraph import EXACT, build, level_window
from kfarey.render import (certificate_scene, component_scene, draw_scene,
                           palette, sweep_figure, table_figure)


def test_palette_injective():
    for n in (1, 10, 40, 150):
        colors = palette(n)
        assert len(colors) == n
        assert len(set(colors)) == n


def test_component_scene_colors_by_component():
    g = build(EXACT, 4, level_window(8))
    scene = component_scene(g)
    assert len(scene.points) == len(g.vertices) - 1  # 1/0 drawn as a ray
    point_color = {x: c for x, _, c in scene.points}
    for x1, x2, c in scene.arcs:
        assert point_color[x1] == c and point_color[x2] == c


def test_certificate_scene_has_all_pairs():
    res = lower_bound_from_construction(4)
    scene = certificate_scene(res.witness, 4)
    finite = [v for v in res.witness if v.q != 0]
    assert len(scene.points) == len(finite)
    # one vertical ray per edge reaching 1/0, one arc per finite pair
    assert len(scene.rays) == len(finite)
    assert len(scene.arcs) == len(finite) * (len(finite) - 1) // 2


def test_figures_written(tmp_path):
    g = build(EXACT, 2, level_window(6))
    a = tmp_path / "scene.svg"
    draw_scene(component_scene(g), str(a))
    b = tmp_path / "sweep.png"
    sweep_figure([1, 2, 3, 4], [3, 3, 3, 3], 2, str(b))
    c = tmp_path / "table.svg"
    table_figure(bounds_table(range(1, 5)), str(c))
    for path in (a, b, c):
        assert path.exists() and path.stat().st_size > 0
    assert not list(tmp_path.glob("*.part"))
