import pytest

from conftest import forms_of_disc, random_form, random_sl2

from qforms.compose import class_bar, class_compose
from qforms.cube import (
    Cube,
    cube_from_forms,
    cube_law_check,
    cube_symmetries,
    negate_layer,
    reflect,
    slicings,
)
from qforms.errors import MismatchedDiscriminant, NotPairPrimitive, ZeroForm
from qforms.forms import GEN_S, Form, FormClass, act, bar, content, discriminant, form_class, neg
from qforms.lattice import Mat2, Plane, form_of, klein_map, q_of_plane

PLANE_23 = Plane.from_basis(Mat2.identity(), Mat2(1, -6, 1, 0))


def primitive_pair(rng, bound=6):
    """Two primitive forms of equal nonzero discriminant."""
    while True:
        f1 = random_form(rng, -bound, bound)
        if content(f1) != 1:
            continue
        for f2 in forms_of_disc(discriminant(f1), bound):
            if content(f2) == 1:
                return f1, f2


class TestSlicings:
    def test_cube_from_worked_plane(self):
        v1, v2 = PLANE_23.basis()
        box = Cube.from_layers(v1, v2)
        q1, q2, q3 = slicings(box)
        ql = q_of_plane(PLANE_23)
        assert q1 == neg(bar(ql))
        pair = klein_map(PLANE_23)
        assert q3 == form_of(pair.a1)
        assert q2 == neg(act(GEN_S, form_of(pair.a2)))
        assert cube_law_check(box)

    def test_zero_cube_rejected(self):
        with pytest.raises(ZeroForm):
            slicings(Cube((0,) * 8))

    def test_equal_discriminants(self, rng):
        checked = 0
        while checked < 200:
            box = Cube(tuple(rng.randint(-5, 5) for _ in range(8)))
            try:
                q1, q2, q3 = slicings(box)
            except ZeroForm:
                continue
            checked += 1
            assert discriminant(q1) == discriminant(q2) == discriminant(q3)

    def test_json_round_trip(self):
        box = Cube((1, -6, 1, 0, 0, -6, 1, -1))
        assert Cube.from_dict(box.to_dict()) == box


class TestCubeFromForms:
    def test_inputs_recovered_verbatim(self):
        box = cube_from_forms(Form(2, 1, 3), Form(2, 1, 3))
        q1, q2, q3 = slicings(box)
        assert q3 == Form(2, 1, 3)
        assert q2 == Form(2, 1, 3)
        assert FormClass.of(q1) == class_bar(class_compose(form_class(2, 1, 3),
                                                           form_class(2, 1, 3)))
        assert cube_law_check(box)

    def test_composing_with_identity(self):
        box = cube_from_forms(Form(1, 1, 6), Form(2, -1, 3))
        assert FormClass.of(slicings(box)[0]) == class_bar(form_class(2, -1, 3))
        assert cube_law_check(box)

    def test_minus_71_composition(self):
        box = cube_from_forms(Form(3, 1, 6), Form(2, 1, 9))
        expected = class_bar(class_compose(form_class(3, 1, 6), form_class(2, 1, 9)))
        assert FormClass.of(slicings(box)[0]) == expected
        assert cube_law_check(box)

    def test_rejects_mismatched_disc(self):
        with pytest.raises(MismatchedDiscriminant):
            cube_from_forms(Form(1, 1, 6), Form(1, 1, 5))

    def test_rejects_common_content(self):
        with pytest.raises(NotPairPrimitive):
            cube_from_forms(Form(2, 0, 12), Form(2, 4, 14))

    def test_law_on_random_pairs(self, rng):
        for _ in range(60):
            f1, f2 = primitive_pair(rng)
            assert cube_law_check(cube_from_forms(f1, f2))

    def test_law_invariant_under_transform(self, rng):
        v1, v2 = PLANE_23.basis()
        for _ in range(40):
            g1 = Mat2.from_rows(random_sl2(rng).rows())
            g2 = Mat2.from_rows(random_sl2(rng).rows())
            box = Cube.from_layers(g1 @ v1 @ g2.bar(), g1 @ v2 @ g2.bar())
            assert cube_law_check(box)


class TestSymmetries:
    def test_reflect_involutive(self, rng):
        box = Cube(tuple(rng.randint(-5, 5) for _ in range(8)))
        assert reflect(reflect(box)) == box

    def test_reflect_bars_all_classes(self, rng):
        for _ in range(40):
            f1, f2 = primitive_pair(rng)
            box = cube_from_forms(f1, f2)
            for orig, refl in zip(slicings(box), slicings(reflect(box))):
                assert FormClass.of(refl) == class_bar(FormClass.of(orig))

    def test_negate_layer_raw_pattern(self):
        v1, v2 = PLANE_23.basis()
        box = Cube.from_layers(v1, v2)
        base = slicings(box)
        for axis in (1, 2, 3):
            for side in (0, 1):
                out = slicings(negate_layer(box, axis, side))
                for i, (orig, new) in enumerate(zip(base, out), start=1):
                    if i == axis:
                        assert new == bar(orig)
                    else:
                        assert new == neg(orig)

    def test_negated_cubes_still_satisfy_law(self, rng):
        for _ in range(30):
            f1, f2 = primitive_pair(rng)
            box = cube_from_forms(f1, f2)
            for axis in (1, 2, 3):
                assert cube_law_check(negate_layer(box, axis, 0))
            assert cube_law_check(reflect(box))

    def test_dispatch(self):
        box = Cube((1, -6, 1, 0, 0, -6, 1, -1))
        assert cube_symmetries(box, "reflect") == reflect(box)
        assert cube_symmetries(box, "negate_layer", 2, 1) == negate_layer(box, 2, 1)
        with pytest.raises(ValueError):
            cube_symmetries(box, "spin")
