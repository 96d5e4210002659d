import { ApiClient, ApiError } from "./api.js";
import type {
  Candidate,
  Engagement,
  Mode,
  Recommendation,
  Report,
  StreamPost,
  UserProfile,
} from "./types.js";

// All truth lives on the service; this state is a cache of the latest
// responses plus the operator's current selection. Reloading the page
// reconstructs an equivalent view from the same endpoints.
export interface ConsoleState {
  mode: Mode;
  now: number;
  streamCursor: number | undefined;
  posts: StreamPost[];
  candidates: Candidate[];
  selectedId: string | null;
  profile: UserProfile | null;
  engagements: Engagement[];
  recommendation: Recommendation | null;
  report: Report | null;
  warning: string | null;
}

export function initialState(): ConsoleState {
  return {
    mode: "manual",
    now: 0,
    streamCursor: undefined,
    posts: [],
    candidates: [],
    selectedId: null,
    profile: null,
    engagements: [],
    recommendation: null,
    report: null,
    warning: null,
  };
}

const STREAM_LIMIT = 200;

export class ConsoleController {
  state: ConsoleState = initialState();

  constructor(private api: ApiClient) {}

  /** One polling round: stream delta, candidates, engagements, report. */
  async poll(): Promise<void> {
    const stream = await this.api.stream(this.state.streamCursor);
    const fresh = stream.posts.filter(
      (p) => !this.state.posts.some((q) => q.post_id === p.post_id),
    );
    const posts = this.state.posts.concat(fresh).slice(-STREAM_LIMIT);
    const cursor = posts.length
      ? Math.max(...posts.map((p) => p.timestamp))
      : this.state.streamCursor;
    const [cands, engagements, report] = await Promise.all([
      this.api.candidates(),
      this.api.engagements(),
      this.api.report(),
    ]);
    this.state = {
      ...this.state,
      now: stream.now,
      posts,
      streamCursor: cursor,
      candidates: cands.candidates,
      engagements: engagements.engagements,
      report,
      mode: report.mode,
    };
    if (this.state.selectedId &&
        !cands.candidates.some((c) => c.user_id === this.state.selectedId)) {
      // keep the profile open only while the user is still a candidate
      this.state = { ...this.state, selectedId: null, profile: null };
    }
  }

  async select(userId: string): Promise<void> {
    const profile = await this.api.userProfile(userId);
    this.state = { ...this.state, selectedId: userId, profile, warning: null };
  }

  async engage(userId: string, question: string): Promise<void> {
    try {
      await this.api.engage(userId, question);
      this.state = { ...this.state, warning: null };
    } catch (err) {
      if (err instanceof ApiError && (err.status === 409 || err.status === 400)) {
        this.state = { ...this.state, warning: err.message };
        return;
      }
      throw err;
    }
    const engagements = await this.api.engagements();
    this.state = { ...this.state, engagements: engagements.engagements };
  }

  async refreshRecommendation(minFraction = 0.05, minLength = 1): Promise<void> {
    try {
      const rec = await this.api.recommend(minFraction, minLength);
      this.state = { ...this.state, recommendation: rec, warning: null };
    } catch (err) {
      if (err instanceof ApiError) {
        this.state = { ...this.state, recommendation: null, warning: err.message };
        return;
      }
      throw err;
    }
  }

  async setMode(mode: Mode): Promise<void> {
    const result = await this.api.setMode(mode);
    this.state = { ...this.state, mode: result.mode, warning: null };
  }

  async tick(seconds: number): Promise<void> {
    await this.api.tick(seconds);
    await this.poll();
  }

  composeEnabled(): boolean {
    return this.state.mode !== "auto";
  }
}
