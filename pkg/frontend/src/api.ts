import type {
  CandidatesResponse,
  Engagement,
  Mode,
  Recommendation,
  Report,
  StreamResponse,
  TickResult,
  UserProfile,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function parse<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const message = (body as { error?: string }).error ?? `HTTP ${resp.status}`;
    throw new ApiError(resp.status, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private get(path: string): Promise<Response> {
    return fetch(this.base + path);
  }

  private post(path: string, payload: unknown): Promise<Response> {
    return fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async stream(since?: number): Promise<StreamResponse> {
    const query = since !== undefined ? `?since=${since}` : "";
    return parse(await this.get(`/api/stream${query}`));
  }

  async candidates(): Promise<CandidatesResponse> {
    return parse(await this.get("/api/candidates"));
  }

  async userProfile(userId: string): Promise<UserProfile> {
    return parse(await this.get(`/api/users/${encodeURIComponent(userId)}`));
  }

  async recommend(minFraction: number, minLength: number): Promise<Recommendation> {
    return parse(await this.post("/api/recommend", {
      min_fraction: minFraction,
      min_length: minLength,
    }));
  }

  async engage(userId: string, question: string): Promise<Engagement> {
    return parse(await this.post("/api/engage", { user_id: userId, question }));
  }

  async engagements(): Promise<{ engagements: Engagement[] }> {
    return parse(await this.get("/api/engagements"));
  }

  async setMode(mode: Mode): Promise<{ mode: Mode }> {
    return parse(await this.post("/api/mode", { mode }));
  }

  async tick(seconds: number): Promise<TickResult> {
    return parse(await this.post("/api/tick", { seconds }));
  }

  async report(): Promise<Report> {
    return parse(await this.get("/api/report"));
  }
}
