import random

import pytest

from cheesecake import (
    Cells,
    Cheesecake,
    Contact,
    DepthOutOfRange,
    DepthThreshold,
    DuplicateContactId,
    EmptyLabel,
    EmptySubsectorList,
    LastSubsector,
    SelectionUnion,
    UnknownAssignment,
    UnknownContact,
    UnknownDepth,
    UnknownSector,
    WholeSectors,
)

from helpers import brute_force_audience, check_integrity, make_random_model, random_selection


@pytest.fixture
def work_model():
    """One contact assigned at (work, 0) plus two unsorted contacts."""
    m = Cheesecake()
    m = m.add_contact(Contact("c1", "Ana"))
    m = m.add_contact(Contact("c2", "Bob"))
    m = m.add_contact(Contact("c3", "Hanna"))
    m = m.create_sector("work", ["close", "distant"])
    m = m.create_sector("family", ["inner", "mid", "outer"])
    return m.assign("c1", "s1", 0)


class TestContacts:
    def test_add_contact_starts_unsorted(self):
        m = Cheesecake().add_contact(Contact("c1", "Ana"))
        assert {c.id for c in m.contacts} == {"c1"}
        assert m.unsorted() == {"c1"}

    def test_add_duplicate_id_rejected(self):
        m = Cheesecake().add_contact(Contact("c1", "Ana"))
        with pytest.raises(DuplicateContactId):
            m.add_contact(Contact("c1", "Other"))

    def test_add_leaves_rest_unchanged(self, work_model):
        m = work_model.add_contact(Contact("c4", "Dana"))
        assert len(m.contacts) == 4
        assert m.assignments == work_model.assignments
        assert m.sectors == work_model.sectors

    def test_remove_contact_cascades_assignments(self, work_model):
        m = work_model.assign("c1", "s2", 1)
        m = m.remove_contact("c1")
        assert not m.has_contact("c1")
        assert all(a.contact_id != "c1" for a in m.assignments)

    def test_remove_unknown_contact(self, work_model):
        with pytest.raises(UnknownContact):
            work_model.remove_contact("zz")

    def test_add_then_remove_is_identity(self, work_model):
        assert work_model.add_contact(Contact("cx", "X")).remove_contact("cx") == work_model

    def test_malformed_contact_rejected(self):
        with pytest.raises(ValueError):
            Contact("", "Ana")
        with pytest.raises(ValueError):
            Contact("c1", "")


class TestSectors:
    def test_create_first_sector(self):
        m = Cheesecake().create_sector("work", ["close", "distant"])
        assert len(m.sectors) == 1
        assert [b.label for b in m.sectors[0].subsectors] == ["close", "distant"]

    def test_create_sector_empty_bands_rejected(self):
        with pytest.raises(EmptySubsectorList):
            Cheesecake().create_sector("x", [])

    def test_create_sector_appends(self, work_model):
        m = work_model.create_sector("sports", ["team"])
        assert [s.label for s in m.sectors] == ["work", "family", "sports"]

    def test_fresh_ids_do_not_collide(self, work_model):
        m = work_model.delete_sector("s1").create_sector("new", ["a"])
        assert m.sectors[-1].id == "s1"  # smallest free id is reused
        m2 = m.create_sector("another", ["a"])
        assert m2.sectors[-1].id == "s3"

    def test_rename_sector_only_changes_label(self, work_model):
        m = work_model.rename_sector("s1", "office")
        assert m.sector("s1").label == "office"
        assert m.assignments == work_model.assignments

    def test_rename_unknown_sector(self, work_model):
        with pytest.raises(UnknownSector):
            work_model.rename_sector("zz", "x")

    def test_rename_to_empty_rejected(self, work_model):
        with pytest.raises(EmptyLabel):
            work_model.rename_sector("s1", "")
        with pytest.raises(EmptyLabel):
            work_model.rename_subsector("s1", 0, "")

    def test_rename_subsector(self, work_model):
        m = work_model.rename_subsector("s1", 1, "far")
        assert [b.label for b in m.sector("s1").subsectors] == ["close", "far"]

    def test_rename_subsector_unknown_depth(self, work_model):
        with pytest.raises(UnknownDepth):
            work_model.rename_subsector("s1", 7, "x")

    def test_delete_sector_frees_contacts(self, work_model):
        m = work_model.delete_sector("s1")
        assert "c1" in m.unsorted()
        assert [s.id for s in m.sectors] == ["s2"]

    def test_delete_preserves_order(self, work_model):
        m = work_model.create_sector("sports", ["team"]).delete_sector("s2")
        assert [s.label for s in m.sectors] == ["work", "sports"]

    def test_delete_unknown_sector(self, work_model):
        with pytest.raises(UnknownSector):
            work_model.delete_sector("zz")


class TestSubsectors:
    def test_insert_at_zero_shifts_assignments(self, work_model):
        m = work_model.add_subsector("s1", "closest", 0)
        assert [b.label for b in m.sector("s1").subsectors] == ["closest", "close", "distant"]
        assert m.assignment_for("c1", "s1").depth == 1  # was 0: band identity kept

    def test_insert_out_of_range(self, work_model):
        with pytest.raises(DepthOutOfRange):
            work_model.add_subsector("s1", "x", 5)

    def test_insert_at_end_changes_nothing(self, work_model):
        m = work_model.add_subsector("s1", "weakest", 2)
        assert m.assignments == work_model.assignments

    def test_remove_middle_band_moves_occupants_outward(self):
        m = Cheesecake().add_contact(Contact("c1", "Ana"))
        m = m.create_sector("s", ["a", "b", "c"]).assign("c1", "s1", 1)
        m = m.remove_subsector("s1", 1)
        # occupant of the removed band lands in the old outer band, which now
        # sits at the same numeric depth
        assert m.assignment_for("c1", "s1").depth == 1
        assert [b.label for b in m.sector("s1").subsectors] == ["a", "c"]

    def test_remove_last_band_rejected(self):
        m = Cheesecake().create_sector("s", ["only"])
        with pytest.raises(LastSubsector):
            m.remove_subsector("s1", 0)

    def test_remove_unknown_depth(self, work_model):
        with pytest.raises(UnknownDepth):
            work_model.remove_subsector("s1", 9)

    def test_remove_band_two_band_enumeration(self):
        # oracle: enumerate every 2-band configuration of one contact and
        # every removable depth; the invariant must survive and the occupant
        # must end in the single surviving band
        for occupied in (None, 0, 1):
            for removed in (0, 1):
                m = Cheesecake().add_contact(Contact("c1", "Ana"))
                m = m.create_sector("s", ["in", "out"])
                if occupied is not None:
                    m = m.assign("c1", "s1", occupied)
                m = m.remove_subsector("s1", removed)
                check_integrity(m)
                assert m.sector("s1").depth_count == 1
                if occupied is None:
                    assert m.assignments == ()
                else:
                    assert m.assignment_for("c1", "s1").depth == 0

    def test_remove_outermost_band_pulls_occupants_in(self):
        m = Cheesecake().add_contact(Contact("c1", "Ana"))
        m = m.create_sector("s", ["a", "b", "c"]).assign("c1", "s1", 2)
        m = m.remove_subsector("s1", 2)
        assert m.assignment_for("c1", "s1").depth == 1


class TestAssignments:
    def test_assign_and_audience(self, work_model):
        assert work_model.audience(Cells([("s1", 0)])) == {"c1"}

    def test_reassign_same_sector_replaces(self, work_model):
        m = work_model.assign("c1", "s1", 1)
        assert m.assignment_for("c1", "s1").depth == 1
        assert sum(a.contact_id == "c1" for a in m.assignments) == 1

    def test_assign_multiple_sectors_allowed(self, work_model):
        m = work_model.assign("c1", "s2", 2)
        assert {(a.sector_id, a.depth) for a in m.assignments if a.contact_id == "c1"} == {
            ("s1", 0),
            ("s2", 2),
        }

    def test_assign_errors(self, work_model):
        with pytest.raises(UnknownContact):
            work_model.assign("zz", "s1", 0)
        with pytest.raises(UnknownSector):
            work_model.assign("c1", "zz", 0)
        with pytest.raises(DepthOutOfRange):
            work_model.assign("c1", "s1", 2)

    def test_move_strengthens_tie(self, work_model):
        m = work_model.assign("c1", "s1", 1).move("c1", ("s1", 1), ("s1", 0))
        assert m.assignment_for("c1", "s1").depth == 0
        assert sum(a.contact_id == "c1" for a in m.assignments) == 1

    def test_move_requires_existing_source(self, work_model):
        with pytest.raises(UnknownAssignment):
            work_model.move("c1", ("s1", 1), ("s1", 0))  # c1 is at depth 0, not 1
        with pytest.raises(UnknownAssignment):
            work_model.move("c2", ("s1", 0), ("s1", 1))

    def test_move_across_sectors(self, work_model):
        m = work_model.move("c1", ("s1", 0), ("s2", 2))
        assert m.assignment_for("c1", "s1") is None
        assert m.assignment_for("c1", "s2").depth == 2
        assert len(m.contacts) == len(work_model.contacts)
        assert len(m.sectors) == len(work_model.sectors)

    def test_assign_then_unassign_is_identity(self, work_model):
        assert work_model.assign("c2", "s2", 0).unassign("c2", "s2") == work_model

    def test_unassign_missing_assignment(self, work_model):
        with pytest.raises(UnknownAssignment):
            work_model.unassign("c2", "s1")


class TestQueries:
    def test_unsorted_fresh_model(self, work_model):
        m = Cheesecake()
        for c in work_model.contacts:
            m = m.add_contact(c)
        assert m.unsorted() == {"c1", "c2", "c3"}

    def test_unsorted_shrinks_after_assign(self, work_model):
        assert work_model.unsorted() == {"c2", "c3"}

    def test_unsorted_empty_roster(self):
        assert Cheesecake().unsorted() == frozenset()

    def test_audience_empty_cells(self, work_model):
        assert work_model.audience(Cells([])) == frozenset()

    def test_whole_sector_equals_union_of_cells(self, work_model):
        m = work_model.assign("c2", "s1", 1)
        whole = m.audience(WholeSectors(["s1"]))
        per_cell = m.audience(Cells([("s1", 0), ("s1", 1)]))
        assert whole == per_cell == {"c1", "c2"}

    def test_depth_threshold_matches_brute_force(self):
        rng = random.Random(20)
        m = make_random_model(rng, n_sectors=(4, 4), n_contacts=(20, 20))
        got = m.audience(DepthThreshold(0))
        expected = frozenset(a.contact_id for a in m.assignments if a.depth == 0)
        assert got == expected

    def test_audience_validates_cells(self, work_model):
        with pytest.raises(UnknownSector):
            work_model.audience(Cells([("zz", 0)]))
        with pytest.raises(DepthOutOfRange):
            work_model.audience(Cells([("s1", 9)]))
        with pytest.raises(UnknownSector):
            work_model.audience(WholeSectors(["zz"]))

    def test_threshold_clips_per_sector(self, work_model):
        m = work_model.assign("c2", "s2", 2)
        assert m.audience(DepthThreshold(99)) == {"c1", "c2"}

    def test_search_substring_case_insensitive(self, work_model):
        assert work_model.search("an") == ["c1", "c3"]  # Ana, Hanna

    def test_search_empty_query_returns_all_sorted(self, work_model):
        assert work_model.search("") == ["c1", "c2", "c3"]  # Ana, Bob, Hanna

    def test_search_no_match(self, work_model):
        assert work_model.search("zz") == []

    def test_search_folds_basic_latin_only(self):
        m = Cheesecake().add_contact(Contact("c1", "ÉVA"))
        # non-Latin uppercase is left alone by design
        assert m.search("éva") == []
        assert m.search("VA") == ["c1"]


class TestProperties:
    def test_random_op_sequences_keep_invariants(self):
        rng = random.Random(4242)
        for _ in range(60):
            model = make_random_model(rng, n_sectors=(0, 4), n_contacts=(0, 8))
            for _ in range(30):
                model = _random_op(rng, model)
                check_integrity(model)

    def test_audience_union_law_and_monotonicity(self):
        rng = random.Random(99)
        for _ in range(40):
            model = make_random_model(rng)
            a = random_selection(rng, model)
            b = random_selection(rng, model)
            union = model.audience(SelectionUnion([a, b]))
            assert union == model.audience(a) | model.audience(b)
            assert model.audience(a) <= union  # monotone in the cell set

    def test_threshold_max_covers_everyone_assigned(self):
        rng = random.Random(7)
        for _ in range(25):
            model = make_random_model(rng)
            max_depth = max((s.depth_count for s in model.sectors), default=1) - 1
            audience = model.audience(DepthThreshold(max(max_depth, 0)))
            assert audience == frozenset(c.id for c in model.contacts) - model.unsorted()
            assert model.unsorted() & audience == frozenset()

    def test_brute_force_oracle_agrees(self):
        rng = random.Random(1234)
        for _ in range(50):
            model = make_random_model(rng)
            for _ in range(5):
                selection = random_selection(rng, model)
                assert model.audience(selection) == brute_force_audience(model, selection)


def _random_op(rng, model):
    """Apply one random valid operation; fall back to adding a contact."""
    ops = []
    if model.sectors:
        ops += ["assign", "delete_sector", "rename", "add_band"]
        if model.contacts:
            ops += ["assign", "assign"]
        removable = [s for s in model.sectors if s.depth_count > 1]
        if removable:
            ops.append("remove_band")
    if model.assignments:
        ops += ["unassign", "move"]
    if model.contacts:
        ops.append("remove_contact")
    ops += ["add_contact", "create_sector"]
    op = rng.choice(ops)

    if op == "add_contact":
        return model.add_contact(Contact(f"c{rng.randrange(10**6)}", "New"))
    if op == "remove_contact":
        return model.remove_contact(rng.choice(model.contacts).id)
    if op == "create_sector":
        return model.create_sector("ctx", ["a", "b"][: rng.randint(1, 2)])
    if op == "delete_sector":
        return model.delete_sector(rng.choice(model.sectors).id)
    if op == "rename":
        return model.rename_sector(rng.choice(model.sectors).id, "renamed")
    if op == "add_band":
        s = rng.choice(model.sectors)
        return model.add_subsector(s.id, "band", rng.randint(0, s.depth_count))
    if op == "remove_band":
        s = rng.choice([s for s in model.sectors if s.depth_count > 1])
        return model.remove_subsector(s.id, rng.randrange(s.depth_count))
    if op == "assign" and model.contacts and model.sectors:
        s = rng.choice(model.sectors)
        return model.assign(
            rng.choice(model.contacts).id, s.id, rng.randrange(s.depth_count)
        )
    if op == "unassign":
        a = rng.choice(model.assignments)
        return model.unassign(a.contact_id, a.sector_id)
    if op == "move":
        a = rng.choice(model.assignments)
        s = rng.choice(model.sectors)
        return model.move(
            a.contact_id, (a.sector_id, a.depth), (s.id, rng.randrange(s.depth_count))
        )
    return model.add_contact(Contact(f"c{rng.randrange(10**6)}", "New"))
