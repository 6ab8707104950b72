"""Pointcut selector parsing and rendering."""

from __future__ import annotations

import pytest

from adaptmeter import SelectorStep, SelectorSyntax, parse_selector, render_selector

FLIGHT_SELECTOR = '//process[@name="TravelBooking"]//invoke[@operation="bookFlight"]'


class TestParseSelector:
    def test_two_step_selector(self):
        selector = parse_selector(FLIGHT_SELECTOR)
        assert selector.steps == (
            SelectorStep("process", (("name", "TravelBooking"),)),
            SelectorStep("invoke", (("operation", "bookFlight"),)),
        )

    def test_bare_element(self):
        selector = parse_selector("//receive")
        assert selector.steps == (SelectorStep("receive"),)

    def test_single_quotes(self):
        selector = parse_selector("//invoke[@operation='bookHotel']")
        assert selector.steps[0].predicates == (("operation", "bookHotel"),)

    def test_whitespace_between_steps(self):
        selector = parse_selector('//process[@name="TravelBooking"]\n    //invoke[@operation="bookFlight"]')
        assert len(selector.steps) == 2

    def test_conjunction_with_and(self):
        selector = parse_selector('//invoke[@operation="book" and @partnerLink="airline"]')
        assert selector.steps[0].predicates == (("operation", "book"), ("partnerLink", "airline"))

    def test_chained_bracket_predicates(self):
        selector = parse_selector('//invoke[@operation="book"][@partnerLink="airline"]')
        assert selector.steps[0].predicates == (("operation", "book"), ("partnerLink", "airline"))

    def test_function_predicate_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('//invoke[contains(@operation,"book")]')

    def test_child_axis_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('/invoke[@operation="book"]')

    def test_empty_selector_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector("   ")

    def test_unterminated_string_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('//invoke[@operation="book]')

    def test_missing_equals_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('//invoke[@operation]')

    def test_first_step_must_be_process_or_activity(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('//partnerLink[@name="client"]')
        # later steps are unconstrained; they simply may not match anything
        parse_selector('//process//partnerLink')

    def test_trailing_junk_rejected(self):
        with pytest.raises(SelectorSyntax):
            parse_selector('//invoke/text()')


class TestRenderSelector:
    @pytest.mark.parametrize(
        "text",
        [
            FLIGHT_SELECTOR,
            "//receive",
            '//invoke[@operation="book" and @partnerLink="airline"]',
            "//switch//invoke[@operation='x y']",
        ],
    )
    def test_parse_render_round_trip(self, text):
        selector = parse_selector(text)
        assert parse_selector(render_selector(selector)) == selector

    def test_render_uses_single_quotes_for_values_with_double_quotes(self):
        selector = parse_selector("//invoke[@operation='say \"hi\"']")
        rendered = render_selector(selector)
        assert "'say \"hi\"'" in rendered
        assert parse_selector(rendered) == selector
