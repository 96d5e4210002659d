import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { ConsoleController, initialState } from "../src/state.js";
import type { Candidate, Engagement, Report, StreamPost } from "../src/types.js";

function makePost(id: string, ts: number): StreamPost {
  return { post_id: id, author_id: "u1", screen_name: "a1", text: `post ${id}`, timestamp: ts };
}

function makeCandidate(id: string, rank: number): Candidate {
  return {
    user_id: id,
    screen_name: id,
    probability: 1 - rank / 10,
    rank,
    engaged: false,
    matched_post: { post_id: "p", text: "at the airport", timestamp: 5 },
  };
}

const REPORT: Report = {
  mode: "manual", now: 100, sent: 0, responded: 0, pending: 0, no_response: 0,
  response_rate: 0,
};

function stubApi(overrides: Partial<Record<keyof ApiClient, unknown>> = {}): ApiClient {
  const base = {
    stream: vi.fn().mockResolvedValue({ now: 100, posts: [makePost("p1", 10)] }),
    candidates: vi.fn().mockResolvedValue({ now: 100, candidates: [makeCandidate("u1", 1)] }),
    engagements: vi.fn().mockResolvedValue({ engagements: [] as Engagement[] }),
    report: vi.fn().mockResolvedValue(REPORT),
    userProfile: vi.fn(),
    engage: vi.fn(),
    recommend: vi.fn(),
    setMode: vi.fn(),
    tick: vi.fn(),
  };
  return Object.assign(base, overrides) as unknown as ApiClient;
}

describe("ConsoleController", () => {
  it("starts with an empty state", () => {
    const state = initialState();
    expect(state.posts).toEqual([]);
    expect(state.selectedId).toBeNull();
    expect(state.mode).toBe("manual");
  });

  it("poll merges stream posts and advances the cursor", async () => {
    const api = stubApi();
    const controller = new ConsoleController(api);
    await controller.poll();
    expect(controller.state.posts.map((p) => p.post_id)).toEqual(["p1"]);
    expect(controller.state.streamCursor).toBe(10);
    (api.stream as ReturnType<typeof vi.fn>).mockResolvedValue({
      now: 200,
      posts: [makePost("p2", 20)],
    });
    await controller.poll();
    expect(controller.state.posts.map((p) => p.post_id)).toEqual(["p1", "p2"]);
    expect(controller.state.streamCursor).toBe(20);
    expect(api.stream).toHaveBeenLastCalledWith(10);
  });

  it("poll deduplicates posts already shown", async () => {
    const api = stubApi();
    const controller = new ConsoleController(api);
    await controller.poll();
    await controller.poll();
    expect(controller.state.posts).toHaveLength(1);
  });

  it("select loads the profile", async () => {
    const api = stubApi({
      userProfile: vi.fn().mockResolvedValue({
        user_id: "u1", screen_name: "a1", profile_text: "", recent_posts: [],
        features: [], probability: 0.5, rank: 1,
      }),
    });
    const controller = new ConsoleController(api);
    await controller.select("u1");
    expect(controller.state.selectedId).toBe("u1");
    expect(controller.state.profile?.probability).toBe(0.5);
  });

  it("engage surfaces a 409 as an inline warning, not an exception", async () => {
    const api = stubApi({
      engage: vi.fn().mockRejectedValue(new ApiError(409, "user 'u1' was already engaged")),
    });
    const controller = new ConsoleController(api);
    await controller.engage("u1", "hello?");
    expect(controller.state.warning).toContain("already engaged");
  });

  it("engage refreshes the log on success", async () => {
    const engagement: Engagement = {
      user_id: "u1", screen_name: "a1", question: "q?", sent_at: 100,
      status: "pending", response_at: null, response_text: null,
    };
    const api = stubApi({
      engage: vi.fn().mockResolvedValue(engagement),
      engagements: vi.fn().mockResolvedValue({ engagements: [engagement] }),
    });
    const controller = new ConsoleController(api);
    await controller.engage("u1", "q?");
    expect(controller.state.engagements).toHaveLength(1);
    expect(controller.state.warning).toBeNull();
  });

  it("propagates unexpected errors", async () => {
    const api = stubApi({ engage: vi.fn().mockRejectedValue(new Error("boom")) });
    const controller = new ConsoleController(api);
    await expect(controller.engage("u1", "q?")).rejects.toThrow("boom");
  });

  it("compose is disabled only in auto mode", async () => {
    const api = stubApi({
      setMode: vi.fn().mockImplementation(async (mode: string) => ({ mode })),
    });
    const controller = new ConsoleController(api);
    expect(controller.composeEnabled()).toBe(true);
    await controller.setMode("auto");
    expect(controller.composeEnabled()).toBe(false);
    await controller.setMode("mixed");
    expect(controller.composeEnabled()).toBe(true);
  });

  it("mode follows the service report on poll", async () => {
    const api = stubApi({
      report: vi.fn().mockResolvedValue({ ...REPORT, mode: "mixed" }),
    });
    const controller = new ConsoleController(api);
    await controller.poll();
    expect(controller.state.mode).toBe("mixed");
  });

  it("recommendation failures surface as warnings", async () => {
    const api = stubApi({
      recommend: vi.fn().mockRejectedValue(new ApiError(409, "no unengaged candidates")),
    });
    const controller = new ConsoleController(api);
    await controller.refreshRecommendation();
    expect(controller.state.recommendation).toBeNull();
    expect(controller.state.warning).toContain("no unengaged");
  });
});
