// Snapshot tests: panels rendered from recorded API fixtures; every number
// in the markup comes from the payload.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { AttentionPoint, ParseErrorDetail, StoryRow, TopicInfo, WordCount } from "../src/api.js";
import {
    renderAlreadyRunning,
    renderAttentionChart,
    renderExplore,
    renderParseError,
    renderRetryBanner,
    renderStoryTable,
    renderTopicStatus,
    renderWordList,
} from "../src/render.js";
import { buildExploreViewModel } from "../src/viewmodel.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function loadJson<T>(name: string): T {
    return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

const attention = loadJson<AttentionPoint[]>("count_day.json");
const words = loadJson<WordCount[]>("wc.json");
const stories = loadJson<StoryRow[]>("stories.json");
const vm = buildExploreViewModel(attention, words, stories);

describe("panel rendering from recorded fixtures", () => {
    it("explore markup snapshot", () => {
        expect(renderExplore(vm)).toMatchSnapshot();
    });

    it("every attention count appears in the chart markup", () => {
        const svg = renderAttentionChart(vm.attention);
        for (const p of attention) {
            expect(svg).toContain(`<title>${p.date}: ${p.count}</title>`);
        }
    });

    it("every word count appears in the list markup", () => {
        const html = renderWordList(vm.words);
        for (const w of words) {
            expect(html).toContain(`>${w.term}<`);
            expect(html).toContain(`>${w.count}<`);
        }
    });

    it("every story id and title appears in the table markup", () => {
        const html = renderStoryTable(vm.stories);
        for (const s of stories) {
            expect(html).toContain(`<td>${s.stories_id}</td>`);
            expect(html).toContain(s.title);
        }
    });

    it("empty view model renders the explicit empty state, not a blank chart", () => {
        const html = renderExplore(buildExploreViewModel([], [], []));
        expect(html).toContain("No results");
        expect(html).not.toContain("<svg");
    });
});

describe("error states", () => {
    it("parse error caret lands on the recorded position", () => {
        const detail = loadJson<{ detail: ParseErrorDetail }>("parse_error.json").detail;
        const html = renderParseError("zebra AND (", detail);
        expect(html).toMatchSnapshot();
        const caretLine = html.split("\n")[1];
        expect(caretLine.indexOf("^")).toBe(detail.position);
    });

    it("network failure renders the retry banner", () => {
        expect(renderRetryBanner("fetch failed")).toContain("Retry");
    });

    it("second spider launch shows already running", () => {
        expect(renderAlreadyRunning(3)).toContain("already in progress");
    });
});

describe("topic status", () => {
    it("done topic links to the dataset download", () => {
        const topic = loadJson<TopicInfo>("topic_done.json");
        const html = renderTopicStatus(topic);
        expect(html).toMatchSnapshot();
        expect(html).toContain(`/api/v2/topics/${topic.topics_id}/download`);
        expect(html).toContain(`${topic.story_count} stories`);
    });

    it("running topic shows progress state", () => {
        const topic = loadJson<TopicInfo>("topic_created.json");
        const html = renderTopicStatus({ ...topic, spider: { state: "running" } });
        expect(html).toContain("running");
        expect(html).not.toContain("download");
    });
});
