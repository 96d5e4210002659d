// Payload shapes of the engagement service API.

export type Mode = "manual" | "auto" | "mixed";

export interface StreamPost {
  post_id: string;
  author_id: string;
  screen_name: string;
  text: string;
  timestamp: number;
}

export interface StreamResponse {
  now: number;
  posts: StreamPost[];
}

export interface Candidate {
  user_id: string;
  screen_name: string;
  probability: number;
  rank: number;
  engaged: boolean;
  matched_post: { post_id: string; text: string; timestamp: number };
}

export interface CandidatesResponse {
  now: number;
  candidates: Candidate[];
}

export interface FeatureEntry {
  name: string;
  value: number | null;
  masked: boolean;
  group: string;
}

export interface UserProfile {
  user_id: string;
  screen_name: string;
  profile_text: string;
  recent_posts: { post_id: string; text: string; timestamp: number; is_retweet: boolean }[];
  features: FeatureEntry[];
  probability: number;
  rank: number | null;
}

export interface Engagement {
  user_id: string;
  screen_name: string;
  question: string;
  sent_at: number;
  status: "pending" | "responded" | "no_response";
  response_at: number | null;
  response_text: string | null;
}

export interface Recommendation {
  train_interval: [number, number];
  train_rate: number;
  test_interval: [number, number];
  selected_ids: string[];
  constraints: { min_fraction: number; min_length: number; top_exclusion_fraction: number };
  selected: Candidate[];
}

export interface Report {
  mode: Mode;
  now: number;
  sent: number;
  responded: number;
  pending: number;
  no_response: number;
  response_rate: number;
}

export interface TickResult {
  now: number;
  new_posts: number;
  responses_delivered: number;
  auto_engaged: string[];
}
