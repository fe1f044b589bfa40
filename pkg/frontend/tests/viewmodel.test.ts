// Every number the Explorer displays must equal a number in the recorded
// API payloads; the CSV download must be the API's own format=csv body.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
    AttentionPoint,
    QueryFormState,
    StoryRow,
    WordCount,
    attentionUrl,
    effectiveQuery,
    enumerateDays,
    storiesUrl,
    wordsUrl,
} from "../src/api.js";
import {
    buildExploreViewModel,
    csvDownloadFilename,
    csvDownloadUrl,
    queryHash,
} from "../src/viewmodel.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function loadJson<T>(name: string): T {
    return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

function loadText(name: string): string {
    return readFileSync(join(FIXTURES, name), "utf-8");
}

const form: QueryFormState = {
    query: "zebra",
    startDate: "",
    endDate: "",
    mediaIds: [],
    split: "day",
};

describe("explore view model", () => {
    const attention = loadJson<AttentionPoint[]>("count_day.json");
    const words = loadJson<WordCount[]>("wc.json");
    const stories = loadJson<StoryRow[]>("stories.json");
    const vm = buildExploreViewModel(attention, words, stories);

    it("chart points equal the count payload exactly", () => {
        expect(vm.attention).toEqual(attention.map((p) => ({ date: p.date, count: p.count })));
    });

    it("total label is the payload sum, nothing recomputed", () => {
        expect(vm.totalLabel).toBe(attention.reduce((s, p) => s + p.count, 0));
    });

    it("word rows equal the wc payload exactly", () => {
        expect(vm.words).toEqual(words);
    });

    it("story rows carry payload fields verbatim", () => {
        for (const [i, row] of vm.stories.entries()) {
            expect(row.stories_id).toBe(stories[i].stories_id);
            expect(row.title).toBe(stories[i].title);
            expect(row.url).toBe(stories[i].url);
            expect(row.publish_date).toBe(stories[i].publish_date);
        }
    });

    it("zero results flag the empty state", () => {
        expect(buildExploreViewModel([], [], []).empty).toBe(true);
        expect(vm.empty).toBe(false);
    });
});

describe("csv downloads", () => {
    it("download url is the same endpoint with format=csv", () => {
        expect(csvDownloadUrl("attention", form)).toBe(attentionUrl(form, "csv"));
        expect(csvDownloadUrl("words", form)).toBe(wordsUrl(form, "csv"));
        expect(csvDownloadUrl("stories", form)).toBe(storiesUrl(form, "csv"));
    });

    it("recorded csv body exactly mirrors the recorded json payload", () => {
        const attention = loadJson<AttentionPoint[]>("count_day.json");
        const lines = loadText("count_day.csv").trim().split("\r\n");
        expect(lines[0]).toBe("date,count");
        expect(lines.slice(1)).toEqual(attention.map((p) => `${p.date},${p.count}`));

        const words = loadJson<WordCount[]>("wc.json");
        const wcLines = loadText("wc.csv").trim().split("\r\n");
        expect(wcLines.slice(1)).toEqual(words.map((w) => `${w.term},${w.count}`));

        const stories = loadJson<StoryRow[]>("stories.json");
        const storyLines = loadText("stories.csv").trim().split("\r\n");
        expect(storyLines.length).toBe(stories.length + 1);
        for (const [i, s] of stories.entries()) {
            expect(storyLines[i + 1].startsWith(`${s.stories_id},${s.media_id},`)).toBe(true);
        }
    });

    it("filename embeds the query hash and date range", () => {
        const withDates = { ...form, startDate: "2020-06-01", endDate: "2020-06-30" };
        const name = csvDownloadFilename("attention", withDates);
        expect(name).toBe(`attention-${queryHash("zebra")}-2020-06-01-2020-06-30.csv`);
        expect(queryHash("zebra")).toMatch(/^[0-9a-f]{8}$/);
        expect(queryHash("zebra")).not.toBe(queryHash("other"));
    });
});

describe("effective query folding", () => {
    it("media and date filters fold into the boolean query", () => {
        const folded = effectiveQuery({
            query: "zebra",
            startDate: "2020-06-01",
            endDate: "2020-06-03",
            mediaIds: [4, 5],
            split: "day",
        });
        expect(folded).toBe(
            "((zebra) AND (media_id:4 OR media_id:5)) AND " +
                "(publish_day:2020-06-01 OR publish_day:2020-06-02 OR publish_day:2020-06-03)",
        );
    });

    it("day enumeration is inclusive", () => {
        expect(enumerateDays("2020-06-28", "2020-07-02")).toEqual([
            "2020-06-28", "2020-06-29", "2020-06-30", "2020-07-01", "2020-07-02",
        ]);
    });
});
