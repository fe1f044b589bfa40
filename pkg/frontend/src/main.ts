// DOM wiring; all rendering goes through the pure functions in render.ts.

import { ApiError, QueryFormState, TopicInfo, effectiveQuery, getJson, postJson } from "./api.js";
import { ExploreController } from "./controller.js";
import {
    renderAlreadyRunning,
    renderExplore,
    renderParseError,
    renderRetryBanner,
    renderTopicStatus,
} from "./render.js";
import { Panel, csvDownloadFilename, csvDownloadUrl } from "./viewmodel.js";

const controller = new ExploreController("");

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
}

function readForm(): QueryFormState {
    const media = el<HTMLInputElement>("media").value.trim();
    return {
        query: el<HTMLInputElement>("query").value,
        startDate: el<HTMLInputElement>("start").value,
        endDate: el<HTMLInputElement>("end").value,
        mediaIds: media ? media.split(",").map((x) => parseInt(x.trim(), 10)) : [],
        split: el<HTMLSelectElement>("split").value as QueryFormState["split"],
    };
}

function updateDownloadLinks(form: QueryFormState, enabled: boolean): void {
    for (const panel of ["attention", "words", "stories"] as Panel[]) {
        const link = el<HTMLAnchorElement>(`download-${panel}`);
        if (enabled) {
            link.removeAttribute("aria-disabled");
            link.href = csvDownloadUrl(panel, form);
            link.download = csvDownloadFilename(panel, form);
        } else {
            link.setAttribute("aria-disabled", "true");
            link.removeAttribute("href");
        }
    }
}

async function explore(): Promise<void> {
    const form = readForm();
    if (!form.query.trim()) return;
    const results = el<HTMLDivElement>("results");
    results.innerHTML = '<div class="loading">Searching…</div>';
    const outcome = await controller.run(form);
    if (outcome.kind === "stale") return;
    if (outcome.kind === "parse-error") {
        results.innerHTML = renderParseError(effectiveQuery(form), outcome.detail);
        updateDownloadLinks(form, false);
        return;
    }
    if (outcome.kind === "network-error") {
        results.innerHTML = renderRetryBanner(outcome.message);
        el<HTMLButtonElement>("retry").addEventListener("click", explore);
        updateDownloadLinks(form, false);
        return;
    }
    results.innerHTML = renderExplore(outcome.vm);
    updateDownloadLinks(form, !outcome.vm.empty);
}

async function createAndSpiderTopic(): Promise<void> {
    const form = readForm();
    const panel = el<HTMLDivElement>("topic-panel");
    try {
        const topic = await postJson<TopicInfo>("", "/api/v2/topics", {
            name: form.query,
            seed_query: form.query,
            start_date: form.startDate,
            end_date: form.endDate,
            media_ids: form.mediaIds,
        });
        await postJson("", `/api/v2/topics/${topic.topics_id}/spider`, {});
        await pollTopic(topic.topics_id, panel);
    } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
            panel.innerHTML = renderAlreadyRunning(-1);
        } else {
            panel.innerHTML = renderRetryBanner(err instanceof Error ? err.message : String(err));
        }
    }
}

async function pollTopic(topicsId: number, panel: HTMLDivElement): Promise<void> {
    for (;;) {
        const topic = await getJson<TopicInfo>("", `/api/v2/topics/${topicsId}`);
        panel.innerHTML = renderTopicStatus(topic);
        const state = topic.spider?.state ?? "idle";
        if (state === "done" || state === "error") return;
        await new Promise((resolve) => setTimeout(resolve, 500));
    }
}

export function init(): void {
    el<HTMLFormElement>("explore-form").addEventListener("submit", (event) => {
        event.preventDefault();
        void explore();
    });
    el<HTMLButtonElement>("make-topic").addEventListener("click", () => {
        void createAndSpiderTopic();
    });
}

if (typeof document !== "undefined" && document.getElementById("explore-form")) {
    init();
}
