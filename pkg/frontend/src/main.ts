import { App, AppElements } from "./app.js";
import { ChatbotClient } from "./api.js";

function required<T extends Element>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id} in index.html`);
  return element as unknown as T;
}

const elements: AppElements = {
  turns: required<HTMLElement>("turns"),
  grid: required<HTMLElement>("grid"),
  timeline: required<HTMLElement>("timeline"),
  banner: required<HTMLElement>("banner"),
  input: required<HTMLInputElement>("input"),
  form: required<HTMLFormElement>("form"),
  levelBadge: required<HTMLElement>("level-badge"),
  levelSelect: required<HTMLSelectElement>("level-select"),
  levelWarning: required<HTMLElement>("level-warning"),
  newConversation: required<HTMLElement>("new-conversation"),
};

// Served from the chatbot's /ui mount by default; override for a dev setup
// with ?chatbot=http://127.0.0.1:8600
const override = new URLSearchParams(window.location.search).get("chatbot");
const app = new App(elements, new ChatbotClient(override ?? ""));
void app.start();
