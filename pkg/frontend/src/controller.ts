// Explore flow: at most one in-flight request set per submission; stale
// responses (superseded by a newer submission) are discarded.

import {
    ApiError,
    AttentionPoint,
    QueryFormState,
    StoryRow,
    WordCount,
    attentionUrl,
    getJson,
    storiesUrl,
    wordsUrl,
} from "./api.js";
import { ExploreViewModel, buildExploreViewModel } from "./viewmodel.js";

export type ExploreOutcome =
    | { kind: "ok"; vm: ExploreViewModel }
    | { kind: "parse-error"; status: number; detail: { error: string; position: number } }
    | { kind: "network-error"; message: string }
    | { kind: "stale" };

export class ExploreController {
    private generation = 0;

    constructor(private base: string = "") {}

    async run(form: QueryFormState): Promise<ExploreOutcome> {
        const mine = ++this.generation;
        try {
            const [attention, words, stories] = await Promise.all([
                getJson<AttentionPoint[]>(this.base, attentionUrl(form)),
                getJson<WordCount[]>(this.base, wordsUrl(form)),
                getJson<StoryRow[]>(this.base, storiesUrl(form)),
            ]);
            if (mine !== this.generation) {
                return { kind: "stale" };
            }
            return { kind: "ok", vm: buildExploreViewModel(attention, words, stories) };
        } catch (err) {
            if (mine !== this.generation) {
                return { kind: "stale" };
            }
            if (err instanceof ApiError && err.status === 400 && typeof err.detail === "object") {
                return { kind: "parse-error", status: err.status, detail: err.detail };
            }
            return { kind: "network-error", message: err instanceof Error ? err.message : String(err) };
        }
    }
}
